#include "stabest/variations.hpp"

#include <cmath>
#include <string>

#include "stabest/errors.hpp"
#include "stabest/summation.hpp"

namespace stabest {

namespace {

void validate_filter(std::span<const double> a) {
    if (a.size() < 3)
        throw validation_error("filter needs order K >= 2: both moment conditions "
                               "cannot hold nontrivially with fewer coefficients");
    CompensatedSum s0, s1;
    bool nonzero = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (!std::isfinite(a[k])) throw validation_error("filter coefficients must be finite");
        if (a[k] != 0.0) nonzero = true;
        s0.add(a[k]);
        s1.add(static_cast<double>(k) * a[k]);
    }
    if (!nonzero) throw validation_error("filter must not be identically zero");
    double scale = 0.0;
    for (double c : a) scale += std::abs(c);
    const double tol = 4.0 * 2.220446049250313e-16 * scale;
    if (!(s0.exact_zero() || std::abs(s0.value()) <= tol))
        throw validation_error("filter violates Sum a_k = 0 (sum = " +
                               std::to_string(s0.value()) + ")");
    if (!(s1.exact_zero() || std::abs(s1.value()) <= tol * a.size()))
        throw validation_error("filter violates Sum k a_k = 0 (sum = " +
                               std::to_string(s1.value()) + ")");
}

Filter daubechies4_filter() {
    const double s3 = std::sqrt(3.0);
    const double norm = 4.0 * std::sqrt(2.0);
    // Wavelet (high-pass) side of the D4 pair; two vanishing moments.
    double g0 = (1.0 - s3) / norm;
    double g1 = -(3.0 - s3) / norm;
    double g2 = (3.0 + s3) / norm;
    double g3 = -(1.0 + s3) / norm;
    // Project onto the exact moment conditions: solve the last two
    // coefficients from the first two so both sums vanish to rounding.
    const double a = -(g0 + g1);
    const double b = -g1;
    g2 = 3.0 * a - b;
    g3 = b - 2.0 * a;
    return Filter{{g0, g1, g2, g3}};
}

} // namespace

Filter make_filter(FilterKind kind) {
    switch (kind) {
        case FilterKind::second_difference: return Filter{{1.0, -2.0, 1.0}};
        case FilterKind::third_difference: return Filter{{1.0, -3.0, 3.0, -1.0}};
        case FilterKind::daubechies4_like: return daubechies4_filter();
    }
    throw validation_error("unknown filter kind");
}

Filter make_filter(std::span<const double> coeffs) {
    validate_filter(coeffs);
    return Filter{{coeffs.begin(), coeffs.end()}};
}

std::vector<double> increments(std::span<const double> values, const Filter& f) {
    return increments_strided(values, f, 1);
}

std::vector<double> increments_strided(std::span<const double> values, const Filter& f,
                                       std::size_t stride) {
    if (stride == 0) throw validation_error("increments: stride must be positive");
    if ((values.size() - 1) % stride != 0)
        throw validation_error("increments: stride does not divide the grid");
    const std::size_t n = (values.size() - 1) / stride; // grid count at this resolution
    const std::size_t K = f.order();
    if (n < K) throw validation_error("increments: path too short for the filter order");
    std::vector<double> out(n - K + 1);
    for (std::size_t p = 0; p + K <= n; ++p) {
        double acc = 0.0;
        for (std::size_t k = 0; k <= K; ++k) acc += f.coeffs[k] * values[(k + p) * stride];
        out[p] = acc;
    }
    return out;
}

void validate_variation_beta(double beta) {
    if (!(beta > -0.5 && beta < 0.0))
        throw validation_error("variation order beta must lie in (-1/2, 0), got " +
                               std::to_string(beta));
}

VariationStat variation_stat_from_increments(std::span<const double> incs, double beta,
                                             std::size_t n) {
    validate_variation_beta(beta);
    std::vector<double> powers(incs.size());
    for (std::size_t i = 0; i < incs.size(); ++i) {
        const double a = std::abs(incs[i]);
        if (a == 0.0)
            throw degenerate_input_error(
                "zero filtered increment at position " + std::to_string(i) +
                ": |0|^beta diverges for beta < 0; resample or check the input");
        const double p = std::exp(beta * std::log(a));
        if (!std::isfinite(p))
            throw degenerate_input_error(
                "filtered increment power over/underflowed at position " + std::to_string(i));
        powers[i] = p;
    }
    VariationStat out;
    out.beta = beta;
    out.n = n;
    out.count = incs.size();
    out.value = pairwise_sum(powers) / static_cast<double>(incs.size());
    return out;
}

VariationStat variation_stat(std::span<const double> values, const Filter& f, double beta) {
    const auto incs = increments(values, f);
    return variation_stat_from_increments(incs, beta, values.size() - 1);
}

double scaled_variation(const VariationStat& v, double hurst) {
    return std::pow(static_cast<double>(v.n), v.beta * hurst) * v.value;
}

} // namespace stabest
