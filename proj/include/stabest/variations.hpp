#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stabest {

// Finite filter a_0..a_K annihilating constants and linear ramps:
// Sum a_k = 0 and Sum k a_k = 0. Both conditions are checked on
// construction (exactly, via error-free summation of the dyadic inputs).
struct Filter {
    std::vector<double> coeffs;

    std::size_t order() const { return coeffs.size() - 1; } // K
};

enum class FilterKind {
    second_difference,   // (1, -2, 1)
    third_difference,    // (1, -3, 3, -1)
    daubechies4_like,    // D4 wavelet coefficients (two vanishing moments)
};

Filter make_filter(FilterKind kind);
Filter make_filter(std::span<const double> coeffs); // custom, validated

// Filtered increments of a discretely observed path: entry p is
// Sum_k a_k values[k+p], p = 0..n-K. Requires values.size() > K.
std::vector<double> increments(std::span<const double> values, const Filter& f);

// Same, reading every `stride`-th sample (used for the half-resolution
// statistic without copying the subsampled path).
std::vector<double> increments_strided(std::span<const double> values, const Filter& f,
                                       std::size_t stride);

struct VariationStat {
    double beta = 0.0;
    double value = 0.0;      // mean of |increment|^beta
    std::size_t n = 0;       // grid count of the underlying path
    std::size_t count = 0;   // number of summands, n - K + 1
};

// Mean of |Delta_p|^beta over all filtered increments; beta in (-1/2, 0).
// Throws degenerate_input_error if any increment is exactly zero or the
// power over/underflows.
VariationStat variation_stat(std::span<const double> values, const Filter& f, double beta);

// Same from precomputed increments (n used only for bookkeeping).
VariationStat variation_stat_from_increments(std::span<const double> incs, double beta,
                                             std::size_t n);

// n^(beta H) * V_n(beta). Diagnostic only: the estimators never need the
// true H, the scale factors cancel inside the moment contrast.
double scaled_variation(const VariationStat& v, double hurst);

void validate_variation_beta(double beta); // requires -1/2 < beta < 0

} // namespace stabest
