#include "stabest.h"

#include <cstring>
#include <new>
#include <string>

#include "stabest/asymptotics.hpp"
#include "stabest/errors.hpp"
#include "stabest/estimators.hpp"
#include "stabest/experiments.hpp"
#include "stabest/io.hpp"
#include "stabest/processes.hpp"
#include "stabest/specfun.hpp"

namespace {

thread_local std::string g_last_error;
thread_local stabest_status g_last_status = STABEST_OK;

stabest_status classify(const std::exception& e) {
    if (dynamic_cast<const stabest::degenerate_input_error*>(&e)) return STABEST_ERR_DEGENERATE;
    if (dynamic_cast<const stabest::numeric_error*>(&e)) return STABEST_ERR_NUMERIC;
    if (dynamic_cast<const stabest::io_error*>(&e)) return STABEST_ERR_IO;
    if (dynamic_cast<const stabest::validation_error*>(&e)) return STABEST_ERR_INVALID;
    return STABEST_ERR_INTERNAL;
}

template <typename Fn>
stabest_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        g_last_status = STABEST_OK;
        return STABEST_OK;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        g_last_status = classify(e);
        return g_last_status;
    } catch (...) {
        g_last_error = "unknown error";
        g_last_status = STABEST_ERR_INTERNAL;
        return g_last_status;
    }
}

stabest::EstimatorOptions to_options(const stabest_estimate_opts* opts) {
    stabest::EstimatorOptions o;
    if (opts != nullptr) {
        if (opts->filter_coeffs != nullptr)
            o.filter = stabest::make_filter(
                std::span<const double>(opts->filter_coeffs, opts->filter_len));
        if (opts->beta != 0.0) o.beta = opts->beta;
        if (opts->beta1 != 0.0) o.beta1 = opts->beta1;
        if (opts->beta2 != 0.0) o.beta2 = opts->beta2;
    }
    return o;
}

void fill_result(const stabest::EstimationResult& r, stabest_estimate_result* out) {
    out->h_hat = r.h_hat;
    out->alpha_hat = r.alpha_hat;
    out->degenerate_alpha = r.degenerate_alpha ? 1 : 0;
    out->v_n_beta = r.v_n_beta;
    out->v_half_beta = r.v_half_beta;
    out->v_n_beta1 = r.v_n_beta1;
    out->v_n_beta2 = r.v_n_beta2;
    out->psi_value = r.psi_value;
    out->n = r.n;
}

} // namespace

struct stabest_path {
    stabest::SamplePath path;
};

struct stabest_variance_report {
    stabest::AsymptoticVariance hurst;
    stabest::AsymptoticVariance stability;
};

extern "C" {

const char* stabest_last_error(void) { return g_last_error.c_str(); }

stabest_status stabest_last_status(void) { return g_last_status; }

stabest_status stabest_neg_moment_closed_form(double alpha, double beta, double* out) {
    if (out == nullptr) return STABEST_ERR_INVALID;
    return guarded([&] { *out = stabest::neg_moment_closed_form(alpha, beta); });
}

stabest_status stabest_neg_moment_cf_integral(double alpha, double beta, double* out) {
    if (out == nullptr) return STABEST_ERR_INVALID;
    return guarded([&] { *out = stabest::neg_moment_via_cf(alpha, beta); });
}

stabest_status stabest_neg_moment_gaussian(double s, double beta, double* out) {
    if (out == nullptr) return STABEST_ERR_INVALID;
    return guarded([&] { *out = stabest::neg_moment_gaussian(s, beta); });
}

stabest_status stabest_alpha_signature(double u, double v, double alpha, double* out) {
    if (out == nullptr) return STABEST_ERR_INVALID;
    return guarded([&] { *out = stabest::alpha_signature(stabest::OrderPair{u, v}, alpha); });
}

stabest_status stabest_alpha_signature_inverse(double u, double v, double y, double* out) {
    if (out == nullptr) return STABEST_ERR_INVALID;
    return guarded(
        [&] { *out = stabest::alpha_signature_inverse(stabest::OrderPair{u, v}, y); });
}

stabest_path* stabest_simulate(const stabest_sim_params* params, uint64_t master_seed,
                               uint64_t stream_index) {
    if (params == nullptr) {
        g_last_error = "null parameter block";
        return nullptr;
    }
    stabest_path* handle = nullptr;
    const stabest_status st = guarded([&] {
        const stabest::SeedSpec seed{master_seed, stream_index};
        const std::size_t n = static_cast<std::size_t>(params->n);
        stabest::SamplePath p;
        switch (params->model) {
            case STABEST_MODEL_FBM: {
                stabest::FbmParams fp;
                fp.hurst = params->hurst;
                p = stabest::simulate_fbm(fp, n, seed);
                break;
            }
            case STABEST_MODEL_LEVY: {
                stabest::LevyParams lp;
                lp.alpha = params->alpha;
                lp.allow_alpha_one = params->allow_alpha_one != 0;
                p = stabest::simulate_levy(lp, n, seed);
                break;
            }
            case STABEST_MODEL_LFSM: {
                stabest::LfsmParams lp;
                lp.hurst = params->hurst;
                lp.alpha = params->alpha;
                if (params->lfsm_kernel_halfwidth != 0.0)
                    lp.kernel_halfwidth = params->lfsm_kernel_halfwidth;
                if (params->lfsm_mesh_div != 0) lp.mesh_div = params->lfsm_mesh_div;
                p = stabest::simulate_lfsm(lp, n, seed);
                break;
            }
            case STABEST_MODEL_TAKENAKA: {
                stabest::TakenakaParams tp;
                tp.nu = params->nu;
                tp.alpha = params->alpha;
                if (params->tk_r_min != 0.0) tp.r_min = params->tk_r_min;
                if (params->tk_r_max != 0.0) tp.r_max = params->tk_r_max;
                if (params->tk_log_step != 0.0) tp.r_log_step = params->tk_log_step;
                p = stabest::simulate_takenaka(tp, n, seed);
                break;
            }
            default: throw stabest::validation_error("unknown model id");
        }
        handle = new stabest_path{std::move(p)};
    });
    return st == STABEST_OK ? handle : nullptr;
}

size_t stabest_path_length(const stabest_path* path) {
    return path == nullptr ? 0 : path->path.values.size();
}

const double* stabest_path_values(const stabest_path* path) {
    return path == nullptr ? nullptr : path->path.values.data();
}

stabest_status stabest_path_write(const stabest_path* path, const char* csv_path,
                                  const char* meta_path) {
    if (path == nullptr || csv_path == nullptr) return STABEST_ERR_INVALID;
    return guarded([&] {
        stabest::write_path_csv(path->path, csv_path,
                                meta_path == nullptr ? std::string() : std::string(meta_path));
    });
}

void stabest_path_free(stabest_path* path) { delete path; }

stabest_status stabest_estimate(const double* values, size_t len,
                                const stabest_estimate_opts* opts,
                                stabest_estimate_result* out) {
    if (values == nullptr || out == nullptr) return STABEST_ERR_INVALID;
    return guarded([&] {
        const stabest::EstimatorOptions o = to_options(opts);
        const stabest::EstimationResult r =
            stabest::estimate_joint(std::span<const double>(values, len), o);
        fill_result(r, out);
    });
}

stabest_status stabest_estimate_csv(const char* csv_path, const stabest_estimate_opts* opts,
                                    stabest_estimate_result* out, int* truncated) {
    if (csv_path == nullptr || out == nullptr) return STABEST_ERR_INVALID;
    return guarded([&] {
        std::vector<double> values = stabest::read_path_csv(csv_path);
        bool trunc = false;
        if ((values.size() - 1) % 2 != 0) {
            values.pop_back();
            trunc = true;
        }
        if (truncated != nullptr) *truncated = trunc ? 1 : 0;
        const stabest::EstimatorOptions o = to_options(opts);
        const stabest::EstimationResult r = stabest::estimate_joint(values, o);
        fill_result(r, out);
    });
}

stabest_variance_report* stabest_variance_fbm(double hurst, double beta, double beta1,
                                              double beta2, int q_max, long r_max) {
    stabest_variance_report* handle = nullptr;
    const stabest_status st = guarded([&] {
        const stabest::Filter f = stabest::make_filter(stabest::FilterKind::second_difference);
        const int q = q_max > 0 ? q_max : 40;
        const long r = r_max > 0 ? r_max : 1024;
        auto rep = new stabest_variance_report;
        rep->hurst = stabest::hurst_clt_variance_fbm(f, hurst, beta, q, r);
        rep->stability = stabest::stability_clt_variance_fbm(f, hurst, beta1, beta2, q, r);
        handle = rep;
    });
    return st == STABEST_OK ? handle : nullptr;
}

stabest_variance_report* stabest_variance_levy(double alpha, double beta, double beta1,
                                               double beta2, uint64_t mc_samples, uint64_t seed,
                                               uint32_t threads) {
    stabest_variance_report* handle = nullptr;
    const stabest_status st = guarded([&] {
        const stabest::Filter f = stabest::make_filter(stabest::FilterKind::second_difference);
        const std::size_t mc = mc_samples > 0 ? static_cast<std::size_t>(mc_samples) : 1000000;
        const auto table = stabest::levy_cov_table(
            alpha, f, {beta, beta1, beta2}, static_cast<int>(f.order()) - 1, true, mc,
            stabest::SeedSpec{seed, 0}, threads == 0 ? 1 : threads);
        auto rep = new stabest_variance_report;
        rep->hurst = stabest::hurst_clt_variance_levy(alpha, f, beta, table);
        rep->stability = stabest::stability_clt_variance_levy(alpha, f, beta1, beta2, table);
        handle = rep;
    });
    return st == STABEST_OK ? handle : nullptr;
}

double stabest_variance_hurst(const stabest_variance_report* report) {
    return report == nullptr ? 0.0 : report->hurst.value;
}

double stabest_variance_stability(const stabest_variance_report* report) {
    return report == nullptr ? 0.0 : report->stability.value;
}

size_t stabest_variance_render(const stabest_variance_report* report, char* buffer, size_t size) {
    if (report == nullptr) return 0;
    const std::string text = "[hurst]\n" + stabest::to_text(report->hurst) + "[stability]\n" +
                             stabest::to_text(report->stability);
    if (buffer != nullptr && size > 0) {
        const size_t ncopy = std::min(size - 1, text.size());
        std::memcpy(buffer, text.data(), ncopy);
        buffer[ncopy] = '\0';
    }
    return text.size();
}

void stabest_variance_free(stabest_variance_report* report) { delete report; }

stabest_status stabest_run_experiment(const char* config_path, uint64_t master_seed,
                                      uint32_t threads) {
    if (config_path == nullptr) return STABEST_ERR_INVALID;
    return guarded([&] {
        stabest::ExperimentConfig cfg = stabest::parse_config_file(config_path);
        cfg.master_seed = master_seed;
        cfg.threads = threads == 0 ? 1 : threads;
        const stabest::ExperimentReport report = stabest::run_experiment(cfg);
        stabest::write_report_files(report);
    });
}

} // extern "C"
