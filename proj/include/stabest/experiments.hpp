#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabest/asymptotics.hpp"
#include "stabest/estimators.hpp"
#include "stabest/processes.hpp"

namespace stabest {

enum class ExperimentMode { consistency, rate, clt };

struct ExperimentConfig {
    ExperimentMode mode = ExperimentMode::consistency;
    Model model = Model::fbm;
    ModelParams params = FbmParams{};
    Filter filter = make_filter(FilterKind::second_difference);
    double beta = -0.25;
    double beta1 = -0.4;
    double beta2 = -0.1;
    std::vector<std::size_t> n_list;  // strictly increasing, all even
    std::size_t replications = 2;     // >= 2
    std::uint64_t master_seed = 0;
    bool variance_check = true;       // clt mode: compute the predicted variances
    std::string out_csv;
    std::string out_summary;
    // asymptotics knobs
    int q_max = 40;
    long r_max = 1024;
    std::size_t mc_samples = 1000000;
    std::optional<double> rate_exponent_override;
    unsigned threads = 1;
};

struct ReplicationRow {
    std::size_t n = 0;
    std::size_t rep = 0;
    std::uint64_t stream = 0;
    EstimationResult est;
    bool failed = false;
    std::string error;
};

struct PerNAggregate {
    std::size_t n = 0;
    std::size_t rows = 0;
    double mean_abs_err_h = 0.0;
    double mean_abs_err_alpha = 0.0;
    double median_abs_err_alpha = 0.0;
    double rmse_h = 0.0;
    double rmse_alpha = 0.0;
    std::size_t degenerate_count = 0;
};

struct RateRegression {
    double slope = 0.0;
    double slope_se = 0.0;
    double intercept = 0.0;
    double target_exponent = 0.0;
    double slack = 0.15;
    bool one_sided_pass = false; // slope <= target + slack
};

struct CltBlock {
    std::size_t n = 0;
    std::size_t count = 0;
    double var_h = 0.0;       // sample variance of sqrt(n)(H_hat - H)
    double var_alpha = 0.0;   // sample variance of sqrt(n)(alpha_hat - alpha)
    double predicted_h = 0.0; // Xi
    double predicted_alpha = 0.0; // Sigma
    double ratio_h = 0.0;
    double ratio_alpha = 0.0;
    double ks_h = 0.0;        // Kolmogorov distance to N(0, predicted)
    double ks_alpha = 0.0;
    bool small_sample = false; // too few replications for a meaningful KS
    AsymptoticVariance report_h;
    AsymptoticVariance report_alpha;
};

struct ExperimentReport {
    ExperimentConfig config;
    double true_hurst = 0.0;
    double true_alpha = 0.0;
    std::vector<ReplicationRow> rows;           // sorted by (n, rep)
    std::vector<PerNAggregate> aggregates;      // one per n
    std::size_t failed_count = 0;
    std::size_t error_inversions_h = 0;         // grid positions where mean error grew
    std::size_t error_inversions_alpha = 0;
    std::optional<RateRegression> rate;
    std::optional<CltBlock> clt;
};

// Self-similarity and stability indices implied by the model parameters.
double true_hurst_of(Model model, const ModelParams& params);
double true_alpha_of(Model model, const ModelParams& params);

// Rate exponent of the paper's b_n sequence for the model (log-log slope
// target; the LFSM branch depends on the parameter region).
double rate_exponent_for(Model model, const ModelParams& params);

ExperimentReport run_consistency(const ExperimentConfig& cfg);
ExperimentReport run_rate(const ExperimentConfig& cfg);
ExperimentReport run_clt(const ExperimentConfig& cfg);
ExperimentReport run_experiment(const ExperimentConfig& cfg); // dispatch on cfg.mode

// Per-replication stream index: decouples grid sizes and replications.
std::uint64_t replication_stream(std::size_t n, std::size_t rep);

// Raw CSV (one row per replication) and the structured text summary; both
// byte-deterministic for a fixed config and seed.
std::string render_rows_csv(const ExperimentReport& report);
std::string render_summary(const ExperimentReport& report);
void write_report_files(const ExperimentReport& report);

// Flat key=value config file. The master seed may be supplied or overridden
// by the caller (the CLI makes it mandatory).
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

// Kolmogorov distance between a sample and N(0, variance).
double kolmogorov_distance_to_normal(std::vector<double> sample, double variance);

} // namespace stabest
