#include "stabest/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stabest/errors.hpp"
#include "stabest/parallel.hpp"

namespace stabest {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.n_list.empty()) throw validation_error("experiment: n_list must not be empty");
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
        if (cfg.n_list[i] % 2 != 0) throw validation_error("experiment: every n must be even");
        if (i > 0 && cfg.n_list[i] <= cfg.n_list[i - 1])
            throw validation_error("experiment: n_list must be strictly increasing");
    }
    if (cfg.replications < 2) throw validation_error("experiment: need at least 2 replications");
    validate_variation_beta(cfg.beta);
    validate_beta_pair(cfg.beta1, cfg.beta2);
    std::visit([](const auto& p) { validate_params(p); }, cfg.params);
}

SamplePath simulate(const ExperimentConfig& cfg, std::size_t n, SeedSpec seed) {
    switch (cfg.model) {
        case Model::fbm: return simulate_fbm(std::get<FbmParams>(cfg.params), n, seed);
        case Model::levy: return simulate_levy(std::get<LevyParams>(cfg.params), n, seed);
        case Model::lfsm: return simulate_lfsm(std::get<LfsmParams>(cfg.params), n, seed);
        case Model::takenaka:
            return simulate_takenaka(std::get<TakenakaParams>(cfg.params), n, seed);
    }
    throw validation_error("experiment: unknown model");
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

PerNAggregate aggregate_for(std::size_t n, const std::vector<ReplicationRow>& rows, double h0,
                            double a0) {
    PerNAggregate agg;
    agg.n = n;
    std::vector<double> abs_alpha_err;
    double sum_h = 0.0, sum_a = 0.0, sq_h = 0.0, sq_a = 0.0;
    for (const auto& r : rows) {
        if (r.n != n || r.failed) continue;
        ++agg.rows;
        const double eh = r.est.h_hat - h0;
        const double ea = r.est.alpha_hat - a0;
        sum_h += std::abs(eh);
        sum_a += std::abs(ea);
        sq_h += eh * eh;
        sq_a += ea * ea;
        abs_alpha_err.push_back(std::abs(ea));
        if (r.est.degenerate_alpha) ++agg.degenerate_count;
    }
    if (agg.rows > 0) {
        const double nd = static_cast<double>(agg.rows);
        agg.mean_abs_err_h = sum_h / nd;
        agg.mean_abs_err_alpha = sum_a / nd;
        agg.rmse_h = std::sqrt(sq_h / nd);
        agg.rmse_alpha = std::sqrt(sq_a / nd);
        agg.median_abs_err_alpha = median_of(std::move(abs_alpha_err));
    }
    return agg;
}

ExperimentReport run_campaign(const ExperimentConfig& cfg) {
    validate_config(cfg);
    ExperimentReport report;
    report.config = cfg;
    report.true_hurst = true_hurst_of(cfg.model, cfg.params);
    report.true_alpha = true_alpha_of(cfg.model, cfg.params);

    EstimatorOptions opts;
    opts.filter = cfg.filter;
    opts.beta = cfg.beta;
    opts.beta1 = cfg.beta1;
    opts.beta2 = cfg.beta2;

    const std::size_t total = cfg.n_list.size() * cfg.replications;
    report.rows.resize(total);

    parallel_for(total, cfg.threads, [&](std::size_t task) {
        const std::size_t n = cfg.n_list[task / cfg.replications];
        const std::size_t rep = task % cfg.replications;
        ReplicationRow& row = report.rows[task];
        row.n = n;
        row.rep = rep;
        row.stream = replication_stream(n, rep);
        try {
            const SamplePath path = simulate(cfg, n, SeedSpec{cfg.master_seed, row.stream});
            row.est = estimate_joint(path.values, opts);
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
    });

    for (const auto& r : report.rows)
        if (r.failed) ++report.failed_count;
    if (report.failed_count * 100 > total)
        throw numeric_error("experiment: more than 1% of replications failed (" +
                            std::to_string(report.failed_count) + "/" + std::to_string(total) +
                            "); first error: " +
                            std::find_if(report.rows.begin(), report.rows.end(),
                                         [](const ReplicationRow& r) { return r.failed; })
                                ->error);

    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni)
        report.aggregates.push_back(
            aggregate_for(cfg.n_list[ni], report.rows, report.true_hurst, report.true_alpha));

    for (std::size_t i = 1; i < report.aggregates.size(); ++i) {
        if (report.aggregates[i].mean_abs_err_h > report.aggregates[i - 1].mean_abs_err_h)
            ++report.error_inversions_h;
        if (report.aggregates[i].mean_abs_err_alpha > report.aggregates[i - 1].mean_abs_err_alpha)
            ++report.error_inversions_alpha;
    }
    return report;
}

} // namespace

std::uint64_t replication_stream(std::size_t n, std::size_t rep) {
    return mix64(0x5EEDFACEull + static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(rep));
}

double true_hurst_of(Model model, const ModelParams& params) {
    switch (model) {
        case Model::fbm: return std::get<FbmParams>(params).hurst;
        case Model::levy: return 1.0 / std::get<LevyParams>(params).alpha;
        case Model::lfsm: return std::get<LfsmParams>(params).hurst;
        case Model::takenaka: {
            const auto& p = std::get<TakenakaParams>(params);
            return p.nu / p.alpha;
        }
    }
    throw validation_error("unknown model");
}

double true_alpha_of(Model model, const ModelParams& params) {
    switch (model) {
        case Model::fbm: return 2.0;
        case Model::levy: return std::get<LevyParams>(params).alpha;
        case Model::lfsm: return std::get<LfsmParams>(params).alpha;
        case Model::takenaka: return std::get<TakenakaParams>(params).alpha;
    }
    throw validation_error("unknown model");
}

double rate_exponent_for(Model model, const ModelParams& params) {
    switch (model) {
        case Model::fbm:
        case Model::levy:
            return -0.5; // sqrt(n) central limit theorem
        case Model::lfsm: {
            const auto& p = std::get<LfsmParams>(params);
            const double threshold = 2.0 - 2.0 / p.alpha;
            if (p.hurst < threshold) return -0.5;
            if (p.hurst > threshold) return p.alpha * (p.hurst - 2.0) / 4.0;
            return -0.5; // boundary case carries an extra sqrt(log n) factor
        }
        case Model::takenaka: {
            const auto& p = std::get<TakenakaParams>(params);
            return 0.5 * (p.nu - 1.0);
        }
    }
    throw validation_error("unknown model");
}

double kolmogorov_distance_to_normal(std::vector<double> sample, double variance) {
    if (sample.empty() || !(variance > 0.0)) return 1.0;
    std::sort(sample.begin(), sample.end());
    const double sd = std::sqrt(variance);
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double cdf = 0.5 * std::erfc(-sample[i] / (sd * std::sqrt(2.0)));
        const double hi = static_cast<double>(i + 1) / n - cdf;
        const double lo = cdf - static_cast<double>(i) / n;
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

ExperimentReport run_consistency(const ExperimentConfig& cfg) { return run_campaign(cfg); }

ExperimentReport run_rate(const ExperimentConfig& cfg) {
    if (cfg.n_list.size() < 4)
        throw validation_error("rate experiment: need at least 4 grid sizes");
    ExperimentReport report = run_campaign(cfg);

    // OLS of ln RMSE(H_hat) on ln n. The paper's rates are upper bounds, so
    // the check is one-sided with a fixed slack.
    RateRegression rr;
    rr.target_exponent = cfg.rate_exponent_override
                             ? *cfg.rate_exponent_override
                             : rate_exponent_for(cfg.model, cfg.params);
    const std::size_t m = report.aggregates.size();
    std::vector<double> x(m), y(m);
    for (std::size_t i = 0; i < m; ++i) {
        x[i] = std::log(static_cast<double>(report.aggregates[i].n));
        y[i] = std::log(report.aggregates[i].rmse_h);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    rr.slope = sxy / sxx;
    rr.intercept = my - rr.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double resid = y[i] - rr.intercept - rr.slope * x[i];
        rss += resid * resid;
    }
    rr.slope_se = m > 2 ? std::sqrt(rss / (static_cast<double>(m) - 2.0) / sxx) : 0.0;
    rr.one_sided_pass = rr.slope <= rr.target_exponent + rr.slack;
    report.rate = rr;
    return report;
}

ExperimentReport run_clt(const ExperimentConfig& cfg) {
    if (cfg.model != Model::fbm && cfg.model != Model::levy)
        throw validation_error("clt experiment: limited to the fbm and levy models");
    ExperimentReport report = run_campaign(cfg);

    CltBlock blk;
    blk.n = cfg.n_list.back();
    const double sqn = std::sqrt(static_cast<double>(blk.n));
    std::vector<double> sh, sa;
    for (const auto& r : report.rows) {
        if (r.n != blk.n || r.failed) continue;
        sh.push_back(sqn * (r.est.h_hat - report.true_hurst));
        sa.push_back(sqn * (r.est.alpha_hat - report.true_alpha));
    }
    blk.count = sh.size();
    blk.small_sample = blk.count < 50;
    auto sample_var = [](const std::vector<double>& v) {
        if (v.size() < 2) return 0.0;
        double m = 0.0;
        for (double t : v) m += t;
        m /= static_cast<double>(v.size());
        double s = 0.0;
        for (double t : v) s += (t - m) * (t - m);
        return s / (static_cast<double>(v.size()) - 1.0);
    };
    blk.var_h = sample_var(sh);
    blk.var_alpha = sample_var(sa);

    if (cfg.variance_check) {
        if (cfg.model == Model::fbm) {
            const double h = std::get<FbmParams>(cfg.params).hurst;
            blk.report_h = hurst_clt_variance_fbm(cfg.filter, h, cfg.beta, cfg.q_max, cfg.r_max);
            blk.report_alpha = stability_clt_variance_fbm(cfg.filter, h, cfg.beta1, cfg.beta2,
                                                          cfg.q_max, cfg.r_max);
        } else {
            const double alpha = std::get<LevyParams>(cfg.params).alpha;
            const auto table = levy_cov_table(
                alpha, cfg.filter, {cfg.beta, cfg.beta1, cfg.beta2},
                static_cast<int>(cfg.filter.order()) - 1, true, cfg.mc_samples,
                SeedSpec{cfg.master_seed, mix64(0xA57A7B1Eull, 0)}, cfg.threads);
            blk.report_h = hurst_clt_variance_levy(alpha, cfg.filter, cfg.beta, table);
            blk.report_alpha =
                stability_clt_variance_levy(alpha, cfg.filter, cfg.beta1, cfg.beta2, table);
        }
        blk.predicted_h = blk.report_h.value;
        blk.predicted_alpha = blk.report_alpha.value;
        blk.ratio_h = blk.var_h / blk.predicted_h;
        blk.ratio_alpha = blk.var_alpha / blk.predicted_alpha;
        blk.ks_h = kolmogorov_distance_to_normal(sh, blk.predicted_h);
        blk.ks_alpha = kolmogorov_distance_to_normal(sa, blk.predicted_alpha);
    }
    report.clt = blk;
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.mode) {
        case ExperimentMode::consistency: return run_consistency(cfg);
        case ExperimentMode::rate: return run_rate(cfg);
        case ExperimentMode::clt: return run_clt(cfg);
    }
    throw validation_error("experiment: unknown mode");
}

// --- report rendering --------------------------------------------------------

std::string render_rows_csv(const ExperimentReport& report) {
    std::string out =
        "model,n,rep,seed,h_hat,alpha_hat,degenerate_alpha,v_n_beta,v_half_beta,v_n_beta1,"
        "v_n_beta2,psi_value\n";
    const char* name = model_name(report.config.model);
    for (const auto& r : report.rows) {
        if (r.failed) continue;
        out += name;
        out += ',' + std::to_string(r.n) + ',' + std::to_string(r.rep) + ',' +
               std::to_string(r.stream) + ',' + fmt(r.est.h_hat) + ',' + fmt(r.est.alpha_hat) +
               ',' + (r.est.degenerate_alpha ? std::string("1") : std::string("0")) + ',' +
               fmt(r.est.v_n_beta) + ',' + fmt(r.est.v_half_beta) + ',' + fmt(r.est.v_n_beta1) +
               ',' + fmt(r.est.v_n_beta2) + ',' + fmt(r.est.psi_value) + '\n';
    }
    return out;
}

std::string render_summary(const ExperimentReport& report) {
    std::ostringstream os;
    const ExperimentConfig& cfg = report.config;
    os << "model = " << model_name(cfg.model) << "\n";
    os << "mode = "
       << (cfg.mode == ExperimentMode::consistency
               ? "consistency"
               : (cfg.mode == ExperimentMode::rate ? "rate" : "clt"))
       << "\n";
    os << "true_hurst = " << fmt(report.true_hurst) << "\n";
    os << "true_alpha = " << fmt(report.true_alpha) << "\n";
    os << "replications = " << cfg.replications << "\n";
    os << "master_seed = " << cfg.master_seed << "\n";
    os << "failed = " << report.failed_count << "\n";
    for (const auto& a : report.aggregates) {
        os << "[n " << a.n << "] rows=" << a.rows << " mean_abs_err_h=" << fmt(a.mean_abs_err_h)
           << " mean_abs_err_alpha=" << fmt(a.mean_abs_err_alpha)
           << " median_abs_err_alpha=" << fmt(a.median_abs_err_alpha)
           << " rmse_h=" << fmt(a.rmse_h) << " rmse_alpha=" << fmt(a.rmse_alpha)
           << " degenerate=" << a.degenerate_count << "\n";
    }
    os << "error_inversions_h = " << report.error_inversions_h << "\n";
    os << "error_inversions_alpha = " << report.error_inversions_alpha << "\n";
    if (report.rate) {
        const auto& rr = *report.rate;
        os << "rate_slope = " << fmt(rr.slope) << "\n";
        os << "rate_slope_se = " << fmt(rr.slope_se) << "\n";
        os << "rate_target_exponent = " << fmt(rr.target_exponent) << "\n";
        os << "rate_slack = " << fmt(rr.slack) << "\n";
        os << "rate_one_sided_pass = " << (rr.one_sided_pass ? 1 : 0) << "\n";
        if (cfg.model == Model::lfsm || cfg.model == Model::takenaka)
            os << "rate_note = simulator discretization bias makes the bound one-sided only\n";
    }
    if (report.clt) {
        const auto& c = *report.clt;
        os << "clt_n = " << c.n << "\n";
        os << "clt_count = " << c.count << "\n";
        os << "clt_var_h = " << fmt(c.var_h) << "\n";
        os << "clt_var_alpha = " << fmt(c.var_alpha) << "\n";
        if (cfg.variance_check) {
            os << "clt_predicted_h = " << fmt(c.predicted_h) << "\n";
            os << "clt_predicted_alpha = " << fmt(c.predicted_alpha) << "\n";
            os << "clt_ratio_h = " << fmt(c.ratio_h) << "\n";
            os << "clt_ratio_alpha = " << fmt(c.ratio_alpha) << "\n";
            os << "clt_ks_h = " << fmt(c.ks_h) << "\n";
            os << "clt_ks_alpha = " << fmt(c.ks_alpha) << "\n";
            os << "clt_mc_max_se = " << fmt(std::max(c.report_h.mc_max_se, c.report_alpha.mc_max_se))
               << "\n";
        }
        if (c.small_sample) os << "clt_note = sample too small for KS\n";
    }
    return os.str();
}

void write_report_files(const ExperimentReport& report) {
    if (!report.config.out_csv.empty()) {
        std::ofstream f(report.config.out_csv, std::ios::binary);
        if (!f) throw io_error("cannot open output file " + report.config.out_csv);
        f << render_rows_csv(report);
        if (!f) throw io_error("failed writing " + report.config.out_csv);
    }
    if (!report.config.out_summary.empty()) {
        std::ofstream f(report.config.out_summary, std::ios::binary);
        if (!f) throw io_error("cannot open output file " + report.config.out_summary);
        f << render_summary(report);
        if (!f) throw io_error("failed writing " + report.config.out_summary);
    }
}

// --- config parsing ------------------------------------------------------------

namespace {

std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == delim) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw validation_error("config: bad numeric value for '" + key + "': " + v);
    }
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const unsigned long long d = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw validation_error("config: bad integer value for '" + key + "': " + v);
    }
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    FbmParams fbm;
    LevyParams levy;
    LfsmParams lfsm;
    TakenakaParams takenaka;
    bool model_set = false;

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw validation_error(origin + ":" + std::to_string(lineno) +
                                   ": expected key=value, got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));

        if (key == "mode") {
            if (val == "consistency") cfg.mode = ExperimentMode::consistency;
            else if (val == "rate") cfg.mode = ExperimentMode::rate;
            else if (val == "clt") cfg.mode = ExperimentMode::clt;
            else throw validation_error("config: unknown mode '" + val + "'");
        } else if (key == "model") {
            cfg.model = model_from_name(val);
            model_set = true;
        } else if (key == "hurst") {
            fbm.hurst = lfsm.hurst = parse_double(val, key);
        } else if (key == "alpha") {
            const double a = parse_double(val, key);
            levy.alpha = lfsm.alpha = takenaka.alpha = a;
        } else if (key == "nu") {
            takenaka.nu = parse_double(val, key);
        } else if (key == "filter") {
            if (val == "second_difference") cfg.filter = make_filter(FilterKind::second_difference);
            else if (val == "third_difference") cfg.filter = make_filter(FilterKind::third_difference);
            else if (val == "daubechies4") cfg.filter = make_filter(FilterKind::daubechies4_like);
            else if (val.rfind("custom:", 0) == 0) {
                std::vector<double> coeffs;
                for (const auto& piece : split(val.substr(7), ','))
                    coeffs.push_back(parse_double(trim(piece), key));
                cfg.filter = make_filter(coeffs);
            } else {
                throw validation_error("config: unknown filter '" + val + "'");
            }
        } else if (key == "beta") {
            cfg.beta = parse_double(val, key);
        } else if (key == "beta1") {
            cfg.beta1 = parse_double(val, key);
        } else if (key == "beta2") {
            cfg.beta2 = parse_double(val, key);
        } else if (key == "n_list") {
            cfg.n_list.clear();
            for (const auto& piece : split(val, ','))
                cfg.n_list.push_back(static_cast<std::size_t>(parse_u64(trim(piece), key)));
        } else if (key == "replications") {
            cfg.replications = static_cast<std::size_t>(parse_u64(val, key));
        } else if (key == "seed") {
            cfg.master_seed = parse_u64(val, key);
        } else if (key == "variance_check") {
            cfg.variance_check = parse_u64(val, key) != 0;
        } else if (key == "out_csv") {
            cfg.out_csv = val;
        } else if (key == "out_summary") {
            cfg.out_summary = val;
        } else if (key == "q_max") {
            cfg.q_max = static_cast<int>(parse_u64(val, key));
        } else if (key == "r_max") {
            cfg.r_max = static_cast<long>(parse_u64(val, key));
        } else if (key == "mc_samples") {
            cfg.mc_samples = static_cast<std::size_t>(parse_u64(val, key));
        } else if (key == "rate_exponent") {
            cfg.rate_exponent_override = parse_double(val, key);
        } else if (key == "lfsm_kernel_halfwidth") {
            lfsm.kernel_halfwidth = parse_double(val, key);
        } else if (key == "lfsm_mesh_div") {
            lfsm.mesh_div = static_cast<unsigned>(parse_u64(val, key));
        } else if (key == "tk_r_min") {
            takenaka.r_min = parse_double(val, key);
        } else if (key == "tk_r_max") {
            takenaka.r_max = parse_double(val, key);
        } else if (key == "tk_log_step") {
            takenaka.r_log_step = parse_double(val, key);
        } else if (key == "allow_alpha_one") {
            levy.allow_alpha_one = parse_u64(val, key) != 0;
        } else {
            throw validation_error(origin + ":" + std::to_string(lineno) +
                                   ": unknown config key '" + key + "'");
        }
    }
    if (!model_set) throw validation_error("config: missing 'model' key");
    switch (cfg.model) {
        case Model::fbm: cfg.params = fbm; break;
        case Model::levy: cfg.params = levy; break;
        case Model::lfsm: cfg.params = lfsm; break;
        case Model::takenaka: cfg.params = takenaka; break;
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open config file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), path);
}

} // namespace stabest
