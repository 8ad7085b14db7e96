#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stabest/rng.hpp"
#include "stabest/variations.hpp"

namespace stabest {

// --- Gaussian correlation structure of filtered increments -----------------

// Correlation of unit-spacing filtered increments at lag k for the
// H-self-similar Gaussian path (even in k, equals 1 at k = 0).
double filtered_correlation(const Filter& f, double hurst, long k);

// Mixed fine/coarse correlation: half-spacing increment j against
// unit-spacing increment l as a function of r = j - 2l. Not symmetric in r.
double filtered_cross_correlation(const Filter& f, double hurst, long r);

// Variance of the unit-spacing filtered increment when E X(1)^2 = 1.
double filtered_increment_variance(const Filter& f, double hurst);

// --- Hermite expansion of the centered power functional ---------------------

// Coefficients of f(x) = s^beta (|x|^beta - E|Z|^beta) in probabilists'
// Hermite polynomials, f_q = E[f(Z) H_q(Z)]/q!. Even coefficients follow a
// closed product recurrence (no alternating-sum cancellation); odd ones
// vanish by symmetry and f_0 by centering.
struct HermiteExpansion {
    double beta = 0.0;
    double increment_std = 1.0;
    int q_max = 0;
    std::vector<double> coeffs;     // f_q for q = 0..q_max
    double parseval_total = 0.0;    // E f(Z)^2, closed form
    double parseval_partial = 0.0;  // sum_{q<=q_max} q! f_q^2
};

HermiteExpansion hermite_coeffs(double beta, double increment_std, int q_max);

// Exact lag-zero cross moment E[f(Z) g(Z)] for two expansions built on the
// same standardized increment.
double hermite_cross_moment(const HermiteExpansion& f, const HermiteExpansion& g);

// --- Asymptotic variance reports -------------------------------------------

struct AsymptoticVariance {
    double value = 0.0;      // the CLT variance (quadratic form)
    double gamma[2][2] = {}; // covariance matrix of the scaled statistic pair
    double gradient[2] = {}; // delta-method gradient at the limit point
    // truncation / Monte Carlo diagnostics
    int q_max = 0;
    long r_max = 0;
    double q_tail = 0.0;       // bound on the dropped Hermite-order mass
    double r_tail = 0.0;       // bound on the dropped correlation-lag mass
    std::size_t mc_samples = 0;
    double mc_max_se = 0.0;    // largest standard error among MC table terms
    bool flagged = false;      // tails or standard errors beyond thresholds
    std::string note;
};

// CLT variance of sqrt(n)(H_hat - H) for the Gaussian model: Hermite series
// over correlation lags |r| <= r_max, orders q <= q_max. The lag-zero terms
// are exact closed-form moments, so the order truncation only affects the
// geometrically convergent off-zero lags.
AsymptoticVariance hurst_clt_variance_fbm(const Filter& f, double hurst, double beta, int q_max,
                                          long r_max);

// CLT variance of sqrt(n)(alpha_hat - 2) for the Gaussian model.
AsymptoticVariance stability_clt_variance_fbm(const Filter& f, double hurst, double beta1,
                                              double beta2, int q_max, long r_max);

// --- Monte Carlo covariance table for the independent-increment model ------

struct LevyCovEntry {
    int lag = 0;         // index shift on the first increment
    bool first_fine = false;  // first increment at half spacing
    double beta_first = 0.0;  // order on the lagged increment
    double beta_second = 0.0; // order on the lag-zero unit-spacing increment
    double value = 0.0;
    double se = 0.0;
    bool exact = false;  // closed form (lag-zero same-variable moments)
    bool flagged = false;
};

struct LevyCovTable {
    double alpha = 0.0;
    Filter filter;
    std::vector<double> betas;
    int max_lag = 0;
    bool with_fine_scale = false;
    std::size_t mc_samples = 0;
    SeedSpec seed;
    std::vector<LevyCovEntry> entries;

    // cov(|D_{lag,1}|^{beta_first}, |D_{0,1}|^{beta_second})
    const LevyCovEntry& coarse(double beta_first, double beta_second, int lag) const;
    // cov(|D_{j,2}|^{beta}, |D_{k,1}|^{beta}); one of j,k must be 0 or j <= 1.
    const LevyCovEntry& fine_coarse(double beta, int j, int k) const;
};

// Estimates every covariance the Gamma assemblies below need, from shared
// windows of iid stable draws (no path simulation). Lag-zero same-variable
// moments are exact closed forms; everything else carries a Monte Carlo
// standard error. Entries whose standard error exceeds 5% of |value| plus a
// floor are flagged.
LevyCovTable levy_cov_table(double alpha, const Filter& f, const std::vector<double>& betas,
                            int max_lag, bool with_fine_scale, std::size_t mc_samples,
                            SeedSpec seed, unsigned threads = 1);

// CLT variances for the independent-increment stable model, assembled from
// the covariance table by the same delta-method gradients as the Gaussian
// case.
AsymptoticVariance hurst_clt_variance_levy(double alpha, const Filter& f, double beta,
                                           const LevyCovTable& table);
AsymptoticVariance stability_clt_variance_levy(double alpha, const Filter& f, double beta1,
                                               double beta2, const LevyCovTable& table);

// Scale of the unit-spacing filtered increment of the stable independent-
// increment model: (sum_j |b_j|^alpha)^(1/alpha), b_j = sum_{k>j} a_k.
double levy_filtered_scale(const Filter& f, double alpha);
std::vector<double> levy_partial_sums(const Filter& f); // the b_j

std::string to_text(const AsymptoticVariance& av);

} // namespace stabest
