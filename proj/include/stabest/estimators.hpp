#pragma once

#include <cstddef>
#include <span>

#include "stabest/variations.hpp"

namespace stabest {

struct EstimatorOptions {
    Filter filter = make_filter(FilterKind::second_difference);
    double beta = -0.25;  // order for the self-similarity estimate
    double beta1 = -0.4;  // order pair for the stability estimate,
    double beta2 = -0.1;  // -1/2 < beta1 < beta2 < 0
};

struct EstimationResult {
    double h_hat = 0.0;
    double alpha_hat = 0.0;       // 0 iff degenerate_alpha
    bool degenerate_alpha = false; // contrast statistic was nonnegative
    double v_n_beta = 0.0;
    double v_half_beta = 0.0;
    double v_n_beta1 = 0.0;
    double v_n_beta2 = 0.0;
    double psi_value = 0.0;       // contrast statistic fed to the inversion
    std::size_t n = 0;
};

// Self-similarity index from the ratio of the full- and half-resolution
// beta-variations: (1/beta) log2(V_{n/2}/V_n). The half statistic reads
// every second grid point of the same record. Requires even n >= 2K.
// The estimate is reported raw (no clamping to (0,1)).
double estimate_hurst(std::span<const double> values, const Filter& f, double beta);

// Stability index from the moment contrast of two beta-variations; H-free by
// the scale cancellation inside the contrast. Returns the raw estimate and
// the degeneracy flag (contrast >= 0 maps to 0).
struct AlphaEstimate {
    double alpha_hat;
    bool degenerate;
    double psi_value;
    double v_beta1;
    double v_beta2;
};
AlphaEstimate estimate_stability(std::span<const double> values, const Filter& f, double beta1,
                                 double beta2);

// Both estimators on one record; the two paths are computed independently.
EstimationResult estimate_joint(std::span<const double> values, const EstimatorOptions& opts);

void validate_beta_pair(double beta1, double beta2); // -1/2 < beta1 < beta2 < 0

} // namespace stabest
