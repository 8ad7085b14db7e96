// Command-line front end for the stabest shared library. All numeric work
// happens behind the C API; this binary only parses flags and moves bytes.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stabest.h"

namespace {

int exit_code_for(stabest_status st) {
    switch (st) {
        case STABEST_OK: return 0;
        case STABEST_ERR_INVALID: return 2;
        case STABEST_ERR_NUMERIC: return 3;
        case STABEST_ERR_DEGENERATE: return 3;
        case STABEST_ERR_IO: return 4;
        case STABEST_ERR_INTERNAL: return 3;
    }
    return 3;
}

int fail(stabest_status st) {
    std::fprintf(stderr, "error: %s\n", stabest_last_error());
    return exit_code_for(st);
}

bool parse_filter_arg(const std::string& arg, std::vector<double>& coeffs) {
    if (arg.empty() || arg == "second_difference") {
        coeffs = {1.0, -2.0, 1.0};
        return true;
    }
    if (arg == "third_difference") {
        coeffs = {1.0, -3.0, 3.0, -1.0};
        return true;
    }
    // comma-separated custom coefficients
    coeffs.clear();
    std::string cur;
    for (char c : arg + ",") {
        if (c == ',') {
            try {
                std::size_t pos = 0;
                coeffs.push_back(std::stod(cur, &pos));
                if (pos != cur.size()) return false;
            } catch (...) {
                return false;
            }
            cur.clear();
        } else {
            cur += c;
        }
    }
    return coeffs.size() >= 3;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation and estimation toolkit for self-similar stable processes"};
    app.require_subcommand(1);

    // --- simulate ---
    auto* sim = app.add_subcommand("simulate", "Generate a sample path as t,value CSV");
    std::string sim_model, sim_out;
    std::uint64_t sim_n = 0, sim_seed = 0, sim_stream = 0;
    double sim_h = 0.0, sim_alpha = 0.0, sim_nu = 0.0;
    double sim_lfsm_T = 0.0, sim_tk_rmin = 0.0, sim_tk_rmax = 0.0, sim_tk_logstep = 0.0;
    unsigned sim_meshdiv = 0;
    bool sim_allow_alpha_one = false;
    sim->add_option("--model", sim_model, "fbm | levy | lfsm | takenaka")->required();
    sim->add_option("--n", sim_n, "grid count (observations at k/n, k=0..n)")->required();
    sim->add_option("--seed", sim_seed, "master seed")->required();
    sim->add_option("--stream", sim_stream, "stream index (default 0)");
    sim->add_option("--out", sim_out, "output CSV path")->required();
    sim->add_option("--H", sim_h, "Hurst index (fbm, lfsm)");
    sim->add_option("--alpha", sim_alpha, "stability index (levy, lfsm, takenaka)");
    sim->add_option("--nu", sim_nu, "Takenaka nu");
    sim->add_option("--lfsm-kernel-halfwidth", sim_lfsm_T, "LFSM kernel truncation T");
    sim->add_option("--lfsm-mesh-div", sim_meshdiv, "LFSM mesh divisor q (mesh = 1/(q n))");
    sim->add_option("--tk-r-min", sim_tk_rmin, "Takenaka radius cutoff (default 1/(4n))");
    sim->add_option("--tk-r-max", sim_tk_rmax, "Takenaka radius cap (default from tail rule)");
    sim->add_option("--tk-log-step", sim_tk_logstep, "Takenaka radius log step");
    sim->add_flag("--allow-alpha-one", sim_allow_alpha_one, "permit levy alpha = 1");

    // --- estimate ---
    auto* est = app.add_subcommand("estimate", "Estimate H and alpha from a t,value CSV");
    std::string est_in, est_filter, est_format = "text";
    double est_beta = 0.0, est_beta1 = 0.0, est_beta2 = 0.0;
    est->add_option("--in", est_in, "input CSV path")->required();
    est->add_option("--filter", est_filter,
                    "second_difference | third_difference | comma-separated coefficients");
    est->add_option("--beta", est_beta, "variation order for H (default -0.25)");
    est->add_option("--beta1", est_beta1, "first order for alpha (default -0.4)");
    est->add_option("--beta2", est_beta2, "second order for alpha (default -0.1)");
    est->add_option("--format", est_format, "text | csv")
        ->check(CLI::IsMember({"text", "csv"}));

    // --- moments ---
    auto* mom = app.add_subcommand("moments", "Closed-form vs integral negative moment");
    double mom_alpha = 0.0, mom_beta = 0.0;
    mom->add_option("--alpha", mom_alpha, "stability index in (0,2]")->required();
    mom->add_option("--beta", mom_beta, "moment order in (-1,0)")->required();

    // --- variance ---
    auto* var = app.add_subcommand("variance", "Asymptotic CLT variances for fbm or levy");
    std::string var_model;
    double var_h = 0.0, var_alpha = 0.0;
    double var_beta = -0.25, var_beta1 = -0.4, var_beta2 = -0.1;
    int var_qmax = 0;
    long var_rmax = 0;
    std::uint64_t var_mc = 0, var_seed = 0;
    unsigned var_threads = 1;
    var->add_option("--model", var_model, "fbm | levy")->required();
    var->add_option("--H", var_h, "Hurst index (fbm)");
    var->add_option("--alpha", var_alpha, "stability index (levy)");
    var->add_option("--beta", var_beta, "variation order for H");
    var->add_option("--beta1", var_beta1, "first order for alpha");
    var->add_option("--beta2", var_beta2, "second order for alpha");
    var->add_option("--q-max", var_qmax, "Hermite order cap (fbm, default 40)");
    var->add_option("--r-max", var_rmax, "correlation lag cap (fbm, default 1024)");
    var->add_option("--mc-samples", var_mc, "Monte Carlo samples (levy, default 1e6)");
    var->add_option("--seed", var_seed, "master seed (levy)");
    var->add_option("--threads", var_threads, "worker cap");

    // --- experiment ---
    auto* exp = app.add_subcommand("experiment", "Run a Monte Carlo campaign from a config file");
    std::string exp_config;
    std::uint64_t exp_seed = 0;
    unsigned exp_threads = 1;
    exp->add_option("--config", exp_config, "key=value config file")->required();
    exp->add_option("--seed", exp_seed, "master seed (mandatory: reproducibility is not opt-in)")
        ->required();
    exp->add_option("--threads", exp_threads, "worker cap (does not affect output bytes)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return 2;
    }

    if (sim->parsed()) {
        stabest_sim_params p{};
        if (sim_model == "fbm") p.model = STABEST_MODEL_FBM;
        else if (sim_model == "levy") p.model = STABEST_MODEL_LEVY;
        else if (sim_model == "lfsm") p.model = STABEST_MODEL_LFSM;
        else if (sim_model == "takenaka") p.model = STABEST_MODEL_TAKENAKA;
        else {
            std::fprintf(stderr, "error: unknown model '%s'\n", sim_model.c_str());
            return 2;
        }
        p.n = sim_n;
        p.hurst = sim_h;
        p.alpha = sim_alpha;
        p.nu = sim_nu;
        p.lfsm_kernel_halfwidth = sim_lfsm_T;
        p.lfsm_mesh_div = sim_meshdiv;
        p.tk_r_min = sim_tk_rmin;
        p.tk_r_max = sim_tk_rmax;
        p.tk_log_step = sim_tk_logstep;
        p.allow_alpha_one = sim_allow_alpha_one ? 1 : 0;
        stabest_path* path = stabest_simulate(&p, sim_seed, sim_stream);
        if (path == nullptr) return fail(stabest_last_status());
        const std::string meta = sim_out + ".meta";
        const stabest_status st = stabest_path_write(path, sim_out.c_str(), meta.c_str());
        stabest_path_free(path);
        if (st != STABEST_OK) return fail(st);
        return 0;
    }

    if (est->parsed()) {
        std::vector<double> coeffs;
        if (!parse_filter_arg(est_filter, coeffs)) {
            std::fprintf(stderr, "error: unusable filter spec '%s'\n", est_filter.c_str());
            return 2;
        }
        stabest_estimate_opts opts{};
        opts.filter_coeffs = coeffs.data();
        opts.filter_len = coeffs.size();
        opts.beta = est_beta;
        opts.beta1 = est_beta1;
        opts.beta2 = est_beta2;
        stabest_estimate_result r{};
        int truncated = 0;
        const stabest_status st = stabest_estimate_csv(est_in.c_str(), &opts, &r, &truncated);
        if (st != STABEST_OK) return fail(st);
        if (truncated != 0)
            std::fprintf(stderr, "warning: odd grid count, truncated the record by one sample\n");
        if (est_format == "csv") {
            std::printf(
                "h_hat,alpha_hat,degenerate_alpha,v_n_beta,v_half_beta,v_n_beta1,v_n_beta2,"
                "psi_value,n\n");
            std::printf("%s,%s,%d,%s,%s,%s,%s,%s,%llu\n", fmt(r.h_hat).c_str(),
                        fmt(r.alpha_hat).c_str(), r.degenerate_alpha, fmt(r.v_n_beta).c_str(),
                        fmt(r.v_half_beta).c_str(), fmt(r.v_n_beta1).c_str(),
                        fmt(r.v_n_beta2).c_str(), fmt(r.psi_value).c_str(),
                        static_cast<unsigned long long>(r.n));
        } else {
            std::printf("n            = %llu\n", static_cast<unsigned long long>(r.n));
            std::printf("H_hat        = %s\n", fmt(r.h_hat).c_str());
            std::printf("alpha_hat    = %s%s\n", fmt(r.alpha_hat).c_str(),
                        r.degenerate_alpha ? "  (degenerate: contrast >= 0)" : "");
            std::printf("V_n(beta)    = %s\n", fmt(r.v_n_beta).c_str());
            std::printf("V_n/2(beta)  = %s\n", fmt(r.v_half_beta).c_str());
            std::printf("V_n(beta1)   = %s\n", fmt(r.v_n_beta1).c_str());
            std::printf("V_n(beta2)   = %s\n", fmt(r.v_n_beta2).c_str());
            std::printf("contrast     = %s\n", fmt(r.psi_value).c_str());
        }
        return 0;
    }

    if (mom->parsed()) {
        double closed = 0.0, integral = 0.0;
        stabest_status st = stabest_neg_moment_closed_form(mom_alpha, mom_beta, &closed);
        if (st != STABEST_OK) return fail(st);
        st = stabest_neg_moment_cf_integral(mom_alpha, mom_beta, &integral);
        if (st != STABEST_OK) return fail(st);
        std::printf("closed_form  = %s\n", fmt(closed).c_str());
        std::printf("cf_integral  = %s\n", fmt(integral).c_str());
        std::printf("abs_diff     = %s\n", fmt(closed - integral).c_str());
        return 0;
    }

    if (var->parsed()) {
        stabest_variance_report* rep = nullptr;
        if (var_model == "fbm") {
            rep = stabest_variance_fbm(var_h, var_beta, var_beta1, var_beta2, var_qmax, var_rmax);
        } else if (var_model == "levy") {
            rep = stabest_variance_levy(var_alpha, var_beta, var_beta1, var_beta2, var_mc,
                                        var_seed, var_threads);
        } else {
            std::fprintf(stderr, "error: variance supports only fbm and levy\n");
            return 2;
        }
        if (rep == nullptr) return fail(stabest_last_status());
        const size_t need = stabest_variance_render(rep, nullptr, 0);
        std::string text(need + 1, '\0');
        stabest_variance_render(rep, text.data(), text.size());
        text.resize(need);
        std::fputs(text.c_str(), stdout);
        stabest_variance_free(rep);
        return 0;
    }

    if (exp->parsed()) {
        const stabest_status st =
            stabest_run_experiment(exp_config.c_str(), exp_seed, exp_threads);
        if (st != STABEST_OK) return fail(st);
        return 0;
    }

    return 2;
}
