#include "stabest/estimators.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "stabest/errors.hpp"
#include "stabest/specfun.hpp"

namespace stabest {

void validate_beta_pair(double beta1, double beta2) {
    if (!(beta1 > -0.5 && beta1 < beta2 && beta2 < 0.0))
        throw validation_error("beta pair must satisfy -1/2 < beta1 < beta2 < 0");
}

double estimate_hurst(std::span<const double> values, const Filter& f, double beta) {
    validate_variation_beta(beta);
    if (values.size() < 2) throw validation_error("estimate_hurst: empty path");
    const std::size_t n = values.size() - 1;
    if (n % 2 != 0)
        throw validation_error("estimate_hurst: grid count must be even; truncate the record "
                               "to n-1 samples upstream");
    if (n / 2 < f.order())
        throw validation_error("estimate_hurst: need n >= 2K for the half-resolution statistic");

    const VariationStat full = variation_stat(values, f, beta);
    const auto half_incs = increments_strided(values, f, 2);
    const VariationStat half = variation_stat_from_increments(half_incs, beta, n / 2);
    return std::log2(half.value / full.value) / beta;
}

AlphaEstimate estimate_stability(std::span<const double> values, const Filter& f, double beta1,
                                 double beta2) {
    validate_beta_pair(beta1, beta2);
    const OrderPair uv{-beta1, -beta2};
    validate_order_pair(uv);

    const VariationStat v1 = variation_stat(values, f, beta1);
    const VariationStat v2 = variation_stat(values, f, beta2);
    const double contrast = moment_contrast(uv, v1.value, v2.value);

    AlphaEstimate out;
    out.psi_value = contrast;
    out.v_beta1 = v1.value;
    out.v_beta2 = v2.value;
    out.degenerate = contrast >= 0.0;
    out.alpha_hat = alpha_from_contrast(uv, contrast);
    return out;
}

EstimationResult estimate_joint(std::span<const double> values, const EstimatorOptions& opts) {
    EstimationResult r;
    r.n = values.size() - 1;
    r.h_hat = estimate_hurst(values, opts.filter, opts.beta);

    const VariationStat full = variation_stat(values, opts.filter, opts.beta);
    const auto half_incs = increments_strided(values, opts.filter, 2);
    r.v_n_beta = full.value;
    r.v_half_beta = variation_stat_from_increments(half_incs, opts.beta, r.n / 2).value;

    const AlphaEstimate a = estimate_stability(values, opts.filter, opts.beta1, opts.beta2);
    r.alpha_hat = a.alpha_hat;
    r.degenerate_alpha = a.degenerate;
    r.v_n_beta1 = a.v_beta1;
    r.v_n_beta2 = a.v_beta2;
    r.psi_value = a.psi_value;
    return r;
}

} // namespace stabest
