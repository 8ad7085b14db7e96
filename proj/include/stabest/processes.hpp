#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "stabest/rng.hpp"

namespace stabest {

enum class Model { fbm, levy, lfsm, takenaka };

const char* model_name(Model m);
Model model_from_name(const std::string& name);

struct FbmParams {
    double hurst = 0.5;
    double unit_variance = 1.0; // E X(1)^2
};

struct LevyParams {
    double alpha = 1.5;
    // alpha = 1 is rejected unless explicitly allowed (the self-similarity
    // reading at alpha = 1 needs care even in the symmetric case).
    bool allow_alpha_one = false;
};

struct LfsmParams {
    double hurst = 0.7;
    double alpha = 1.5;          // requires hurst != 1/alpha
    double kernel_halfwidth = 10.0; // T: kernel truncated to [-T, 1+T]
    unsigned mesh_div = 4;          // Riemann mesh = 1/(mesh_div * n)
};

struct TakenakaParams {
    double nu = 0.5;
    double alpha = 1.25;        // self-similarity index nu/alpha must lie in (0,1)
    double r_min = 0.0;         // 0 = default 1/(4n)
    double r_max = 0.0;         // 0 = default from the 1e-3 tail-mass rule
    double r_log_step = 0.05;   // relative width of the log-spaced radius rows
};

using ModelParams = std::variant<FbmParams, LevyParams, LfsmParams, TakenakaParams>;

// Observations X(k/n), k = 0..n. values[0] == 0 for every model.
struct SamplePath {
    Model model = Model::fbm;
    std::size_t n = 0;
    std::vector<double> values; // n+1 entries
    ModelParams params;
    SeedSpec seed;
};

// Exact-in-distribution synthesis: circulant embedding of the stationary
// increment sequence when n is a power of two, dense Cholesky otherwise
// (or when the embedding fails to be nonnegative definite). Cholesky is
// limited to n <= 4096.
SamplePath simulate_fbm(const FbmParams& p, std::size_t n, SeedSpec seed);

// Cumulative sums of iid standard stable draws scaled by n^(-1/alpha);
// exact in distribution at the grid points.
SamplePath simulate_levy(const LevyParams& p, std::size_t n, SeedSpec seed);

// Riemann-sum approximation of the well-balanced moving-average kernel
// integral; kernel evaluated at cell midpoints, cells of width 1/(mesh_div n)
// over [-T, 1+T]. Documented approximation, not exact.
SamplePath simulate_lfsm(const LfsmParams& p, std::size_t n, SeedSpec seed);

// Same path built from caller-supplied cell noise (iid standard stable,
// one per cell). Used to couple mesh refinements in tests.
SamplePath lfsm_from_noise(const LfsmParams& p, std::size_t n, std::span<const double> noise);

// Number of kernel cells simulate_lfsm will use.
std::size_t lfsm_cell_count(const LfsmParams& p, std::size_t n);

// Indicator-set approximation on log-spaced radius rows. Within each row the
// x-partition is generated by the exact interval endpoints of every grid
// time, so the horizontal geometry carries no discretization error; only the
// radius coordinate and the [r_min, r_max] truncation are approximate.
SamplePath simulate_takenaka(const TakenakaParams& p, std::size_t n, SeedSpec seed);

// Membership of (x, r) in the symmetric difference driving X(t):
// |x - t| <= r XOR |x| <= r. Exposed for brute-force geometry checks.
bool takenaka_indicator(double t, double x, double r);

// Effective radius truncation bounds for a given grid size (resolves the
// zero-means-default convention in TakenakaParams).
void takenaka_effective_radius_range(const TakenakaParams& p, std::size_t n, double& r_min,
                                     double& r_max);

void validate_params(const FbmParams& p);
void validate_params(const LevyParams& p);
void validate_params(const LfsmParams& p);
void validate_params(const TakenakaParams& p);

} // namespace stabest
