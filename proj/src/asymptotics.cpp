#include "stabest/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>

#include "stabest/errors.hpp"
#include "stabest/parallel.hpp"
#include "stabest/specfun.hpp"

namespace stabest {

// --- correlation kernels ----------------------------------------------------

namespace {

double filtered_weight_sum(const Filter& f, double two_h, long shift, int coarse_factor) {
    // sum_{p,p'} a_p a_{p'} |shift + p - coarse_factor p'|^{2H}
    const auto& a = f.coeffs;
    double s = 0.0;
    for (std::size_t p = 0; p < a.size(); ++p) {
        for (std::size_t pp = 0; pp < a.size(); ++pp) {
            const double d = static_cast<double>(shift + static_cast<long>(p) -
                                                 coarse_factor * static_cast<long>(pp));
            s += a[p] * a[pp] * std::pow(std::abs(d), two_h);
        }
    }
    return s;
}

} // namespace

double filtered_increment_variance(const Filter& f, double hurst) {
    return -0.5 * filtered_weight_sum(f, 2.0 * hurst, 0, 1);
}

double filtered_correlation(const Filter& f, double hurst, long k) {
    const double two_h = 2.0 * hurst;
    return filtered_weight_sum(f, two_h, k, 1) / filtered_weight_sum(f, two_h, 0, 1);
}

double filtered_cross_correlation(const Filter& f, double hurst, long r) {
    const double two_h = 2.0 * hurst;
    return filtered_weight_sum(f, two_h, r, 2) /
           (std::pow(2.0, hurst) * filtered_weight_sum(f, two_h, 0, 1));
}

// --- Hermite expansion -------------------------------------------------------

HermiteExpansion hermite_coeffs(double beta, double increment_std, int q_max) {
    validate_variation_beta(beta);
    if (!(increment_std > 0.0))
        throw validation_error("hermite_coeffs: increment std must be positive");
    if (q_max < 4 || q_max % 2 != 0)
        throw validation_error("hermite_coeffs: order cap must be even and at least 4");

    HermiteExpansion e;
    e.beta = beta;
    e.increment_std = increment_std;
    e.q_max = q_max;
    e.coeffs.assign(q_max + 1, 0.0);

    const double s_pow = std::pow(increment_std, beta);
    const double m0 = neg_moment_gaussian(1.0, beta); // E|Z|^beta
    // E[|Z|^beta H_{2m}(Z)] = E|Z|^beta (-1)^m (2m)!/(2^m m!) (-beta/2)_m / (1/2)_m,
    // which telescopes to f_{2(m+1)} = -f_{2m} (m - beta/2) / ((m + 1/2)(2m + 2)).
    // f_0 vanishes by centering, odd orders by symmetry.
    double f_even = s_pow * m0 * beta / 2.0; // f_2
    for (int m = 1; 2 * m <= q_max; ++m) {
        e.coeffs[2 * m] = f_even;
        const double md = static_cast<double>(m);
        f_even *= -(md - 0.5 * beta) / ((md + 0.5) * (2.0 * md + 2.0));
    }

    const double m2 = neg_moment_gaussian(1.0, 2.0 * beta);
    e.parseval_total = s_pow * s_pow * (m2 - m0 * m0);

    double partial = 0.0;
    double t = 2.0 * e.coeffs[2] * e.coeffs[2]; // 2! f_2^2
    for (int m = 1; 2 * m <= q_max; ++m) {
        partial += t;
        const double md = static_cast<double>(m);
        const double ratio = (md - 0.5 * beta) / (md + 0.5);
        t *= ratio * ratio * (2.0 * md + 1.0) / (2.0 * md + 2.0);
    }
    e.parseval_partial = partial;
    return e;
}

double hermite_cross_moment(const HermiteExpansion& f, const HermiteExpansion& g) {
    if (f.increment_std != g.increment_std)
        throw validation_error("hermite_cross_moment: expansions built on different scales");
    const double b1 = f.beta, b2 = g.beta;
    const double s_pow = std::pow(f.increment_std, b1 + b2);
    return s_pow * (neg_moment_gaussian(1.0, b1 + b2) -
                    neg_moment_gaussian(1.0, b1) * neg_moment_gaussian(1.0, b2));
}

// --- Gaussian-model Gamma assembly ------------------------------------------

namespace {

// q! f_q g_q for q = 2,4,..., by the same stable recurrence as above.
std::vector<double> weighted_products(const HermiteExpansion& f, const HermiteExpansion& g) {
    const int q_max = std::min(f.q_max, g.q_max);
    std::vector<double> t(q_max / 2 + 1, 0.0); // t[m] = (2m)! f_{2m} g_{2m}
    double fact = 2.0;                         // (2m)!
    for (int m = 1; 2 * m <= q_max; ++m) {
        t[m] = fact * f.coeffs[2 * m] * g.coeffs[2 * m];
        fact *= (2.0 * m + 1.0) * (2.0 * m + 2.0);
    }
    return t;
}

// sum_m t[m] rho^{2m}; |rho| < 1 makes this geometric. Returns the partial
// sum and a bound on the dropped tail.
struct SeriesValue {
    double sum = 0.0;
    double tail = 0.0;
};

SeriesValue hermite_series(const std::vector<double>& t, double rho) {
    SeriesValue out;
    const double r2 = rho * rho;
    double pw = r2;
    for (std::size_t m = 1; m < t.size(); ++m) {
        out.sum += t[m] * pw;
        pw *= r2;
    }
    // |t| is decreasing, so the dropped mass is below |t_last| r^{Q+2}/(1-r^2).
    if (r2 < 1.0 && !t.empty()) out.tail = std::abs(t.back()) * pw / (1.0 - r2);
    return out;
}

// Lag-sum diagnostics from the |rho(r)| <= C r^{2H-3} decay.
double lag_tail_bound(double c2_weight, double decay_c, long r_max, double hurst) {
    const double p = 2.0 * (2.0 * hurst - 3.0); // q = 2 dominates the tail
    if (p >= -1.0) return std::numeric_limits<double>::infinity();
    const double rm = static_cast<double>(r_max);
    return 2.0 * c2_weight * decay_c * decay_c * std::pow(rm, p + 1.0) / (-(p + 1.0));
}

} // namespace

AsymptoticVariance hurst_clt_variance_fbm(const Filter& f, double hurst, double beta, int q_max,
                                          long r_max) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw validation_error("hurst must lie in (0,1)");
    if (r_max < 1) throw validation_error("r_max must be positive");

    const double var_inc = filtered_increment_variance(f, hurst);
    const HermiteExpansion he = hermite_coeffs(beta, std::sqrt(var_inc), q_max);
    const auto t = weighted_products(he, he);

    // (1,1): asymptotic variance of the full-resolution scaled variation; the
    // lag-zero term is the exact second moment, off-zero lags are Hermite
    // series in rho(r).
    double g11 = he.parseval_total;
    double q_tail = 0.0;
    double decay_c = 0.0;
    for (long r = 1; r <= r_max; ++r) {
        const double rho = filtered_correlation(f, hurst, r);
        const SeriesValue sv = hermite_series(t, rho);
        g11 += 2.0 * sv.sum;
        q_tail += 2.0 * sv.tail;
        if (r >= r_max - 4)
            decay_c = std::max(decay_c, std::abs(rho) * std::pow(static_cast<double>(r),
                                                                 3.0 - 2.0 * hurst));
    }

    // (1,2): mixed fine/coarse lags; the cross-correlation is below one in
    // modulus everywhere, including r = 0, and is not even in r.
    double g12 = 0.0;
    double decay_c1 = 0.0;
    for (long r = -r_max; r <= r_max; ++r) {
        const double rho1 = filtered_cross_correlation(f, hurst, r);
        const SeriesValue sv = hermite_series(t, rho1);
        g12 += sv.sum;
        q_tail += sv.tail;
        if (std::labs(r) >= r_max - 4)
            decay_c1 = std::max(decay_c1, std::abs(rho1) * std::pow(static_cast<double>(std::labs(r)),
                                                                    3.0 - 2.0 * hurst));
    }

    const double g22 = 2.0 * g11;

    AsymptoticVariance av;
    av.q_max = q_max;
    av.r_max = r_max;
    av.q_tail = q_tail;
    av.r_tail = lag_tail_bound(t.size() > 1 ? std::abs(t[1]) : 0.0, std::max(decay_c, decay_c1),
                               r_max, hurst);
    av.gamma[0][0] = g11;
    av.gamma[0][1] = av.gamma[1][0] = g12;
    av.gamma[1][1] = g22;

    const double m = neg_moment_gaussian(std::sqrt(var_inc), beta);
    const double c = 1.0 / (beta * std::numbers::ln2 * m);
    av.gradient[0] = -c;
    av.gradient[1] = c;
    av.value = c * c * (g11 - 2.0 * g12 + g22);
    av.flagged = (av.q_tail + av.r_tail) > 0.01 * std::abs(g11 - 2.0 * g12 + g22);
    return av;
}

AsymptoticVariance stability_clt_variance_fbm(const Filter& f, double hurst, double beta1,
                                              double beta2, int q_max, long r_max) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw validation_error("hurst must lie in (0,1)");
    if (!(beta1 > -0.5 && beta1 < beta2 && beta2 < 0.0))
        throw validation_error("beta pair must satisfy -1/2 < beta1 < beta2 < 0");
    if (r_max < 1) throw validation_error("r_max must be positive");

    const double var_inc = filtered_increment_variance(f, hurst);
    const double s = std::sqrt(var_inc);
    const HermiteExpansion hf = hermite_coeffs(beta1, s, q_max);
    const HermiteExpansion hg = hermite_coeffs(beta2, s, q_max);
    const auto tff = weighted_products(hf, hf);
    const auto tgg = weighted_products(hg, hg);
    const auto tfg = weighted_products(hf, hg);

    double sff = hf.parseval_total;
    double sgg = hg.parseval_total;
    double sfg = hermite_cross_moment(hf, hg);
    double q_tail = 0.0;
    double decay_c = 0.0;
    for (long r = 1; r <= r_max; ++r) {
        const double rho = filtered_correlation(f, hurst, r);
        const SeriesValue a = hermite_series(tff, rho);
        const SeriesValue b = hermite_series(tgg, rho);
        const SeriesValue c = hermite_series(tfg, rho);
        sff += 2.0 * a.sum;
        sgg += 2.0 * b.sum;
        sfg += 2.0 * c.sum;
        q_tail += 2.0 * (a.tail + b.tail + c.tail);
        if (r >= r_max - 4)
            decay_c = std::max(decay_c, std::abs(rho) * std::pow(static_cast<double>(r),
                                                                 3.0 - 2.0 * hurst));
    }

    AsymptoticVariance av;
    av.q_max = q_max;
    av.r_max = r_max;
    av.q_tail = q_tail;
    av.r_tail = lag_tail_bound(std::abs(tff.size() > 1 ? tff[1] : 0.0), decay_c, r_max, hurst);
    av.gamma[0][0] = sff;
    av.gamma[0][1] = av.gamma[1][0] = sfg;
    av.gamma[1][1] = sgg;

    const OrderPair uv{-beta1, -beta2};
    const double m1 = neg_moment_gaussian(s, beta1);
    const double m2 = neg_moment_gaussian(s, beta2);
    const double contrast = moment_contrast(uv, m1, m2);
    const double alpha0 = alpha_signature_inverse(uv, contrast);
    const double slope = alpha_signature_derivative(uv, alpha0);
    av.gradient[0] = -uv.v / (m1 * slope);
    av.gradient[1] = uv.u / (m2 * slope);
    av.value = av.gradient[0] * (sff * av.gradient[0] + sfg * av.gradient[1]) +
               av.gradient[1] * (sfg * av.gradient[0] + sgg * av.gradient[1]);
    av.flagged = (av.q_tail + av.r_tail) > 0.01 * (std::abs(sff) + std::abs(sgg));
    return av;
}

// --- Monte Carlo covariance table -------------------------------------------

std::vector<double> levy_partial_sums(const Filter& f) {
    const std::size_t K = f.order();
    std::vector<double> b(K, 0.0);
    for (std::size_t j = 0; j < K; ++j)
        for (std::size_t k = j + 1; k <= K; ++k) b[j] += f.coeffs[k];
    return b;
}

double levy_filtered_scale(const Filter& f, double alpha) {
    double s = 0.0;
    for (double bj : levy_partial_sums(f)) s += std::pow(std::abs(bj), alpha);
    return std::pow(s, 1.0 / alpha);
}

namespace {

struct McAccumulator {
    std::vector<double> sum;
    std::vector<double> sumsq;
    std::size_t count = 0;
};

} // namespace

const LevyCovEntry& LevyCovTable::coarse(double beta_first, double beta_second, int lag) const {
    for (const auto& e : entries)
        if (!e.first_fine && e.lag == lag && e.beta_first == beta_first &&
            e.beta_second == beta_second)
            return e;
    throw validation_error("covariance table is missing coarse entry (lag " +
                           std::to_string(lag) + ", beta " + std::to_string(beta_first) + "," +
                           std::to_string(beta_second) + ")");
}

const LevyCovEntry& LevyCovTable::fine_coarse(double beta, int j, int k) const {
    for (const auto& e : entries)
        if (e.first_fine && e.lag == j - 2 * k && e.beta_first == beta && e.beta_second == beta)
            return e;
    throw validation_error("covariance table is missing fine/coarse entry (j " +
                           std::to_string(j) + ", k " + std::to_string(k) + ", beta " +
                           std::to_string(beta) + ")");
}

LevyCovTable levy_cov_table(double alpha, const Filter& f, const std::vector<double>& betas,
                            int max_lag, bool with_fine_scale, std::size_t mc_samples,
                            SeedSpec seed, unsigned threads) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw validation_error("alpha must lie in (0,2]");
    if (max_lag < 1) throw validation_error("max_lag must be at least 1");
    if (mc_samples < 100000) throw validation_error("mc_samples must be at least 1e5");
    for (double b : betas) validate_variation_beta(b);

    LevyCovTable table;
    table.alpha = alpha;
    table.filter = f;
    table.betas = betas;
    table.max_lag = max_lag;
    table.with_fine_scale = with_fine_scale;
    table.mc_samples = mc_samples;
    table.seed = seed;

    const std::vector<double> b = levy_partial_sums(f);
    const std::size_t K = b.size();
    const double scale_coarse = levy_filtered_scale(f, alpha);
    const double scale_fine = scale_coarse * std::pow(0.5, 1.0 / alpha);

    auto moment = [&](double beta, bool fine) {
        return std::pow(fine ? scale_fine : scale_coarse, beta) *
               neg_moment_closed_form(alpha, beta);
    };

    // Entry layout. Lag-zero same-increment moments have closed forms; the
    // stable law of the shared increment makes them exact.
    struct McSpec {
        std::size_t entry_idx;
        int idx_first;  // increment index (fine j or coarse k)
        bool fine;
        double bfirst, bsecond;
        double mean_first, mean_second;
    };
    std::vector<McSpec> specs;

    for (double ba : betas) {
        for (double bb : betas) {
            for (int lag = 0; lag <= max_lag; ++lag) {
                LevyCovEntry e;
                e.lag = lag;
                e.first_fine = false;
                e.beta_first = ba;
                e.beta_second = bb;
                if (lag == 0) {
                    e.exact = true;
                    e.value = std::pow(scale_coarse, ba + bb) *
                                  neg_moment_closed_form(alpha, ba + bb) -
                              moment(ba, false) * moment(bb, false);
                    e.se = 0.0;
                    table.entries.push_back(e);
                } else {
                    table.entries.push_back(e);
                    specs.push_back({table.entries.size() - 1, lag, false, ba, bb,
                                     moment(ba, false), moment(bb, false)});
                }
            }
        }
    }
    if (with_fine_scale) {
        for (double beta : betas) {
            auto add_fine = [&](int j, int k) {
                LevyCovEntry e;
                e.lag = j - 2 * k;
                e.first_fine = true;
                e.beta_first = beta;
                e.beta_second = beta;
                for (const auto& ex : table.entries)
                    if (ex.first_fine && ex.lag == e.lag && ex.beta_first == beta) return;
                table.entries.push_back(e);
                specs.push_back({table.entries.size() - 1, j - 2 * k, true, beta, beta,
                                 moment(beta, true), moment(beta, false)});
            };
            for (int j = 0; j <= 2 * max_lag + 1; ++j) add_fine(j, 0);
            for (int k = 1; k <= max_lag; ++k) {
                add_fine(0, k);
                add_fine(1, k);
            }
        }
    }

    // Window of iid half-spacing draws wide enough for every increment above.
    // Fine j is allowed to be negative (j - 2k indexing); shift everything by
    // 2*max_lag so indices stay nonnegative.
    const int shift = 2 * max_lag;
    const int fine_hi = 2 * max_lag + 1;
    const std::size_t window = static_cast<std::size_t>(shift + 2 * (max_lag + static_cast<int>(K)));

    const std::size_t block_size = 1 << 15;
    const std::size_t n_blocks = (mc_samples + block_size - 1) / block_size;
    std::vector<McAccumulator> blocks(n_blocks);

    parallel_for(n_blocks, threads, [&](std::size_t bi) {
        McAccumulator acc;
        acc.sum.assign(specs.size(), 0.0);
        acc.sumsq.assign(specs.size(), 0.0);
        const std::size_t lo = bi * block_size;
        const std::size_t hi = std::min(mc_samples, lo + block_size);
        acc.count = hi - lo;
        RandomStream rs(SeedSpec{seed.master_seed,
                                 mix64(seed.stream_index ^ 0xC07A8C0FFEEull, bi)});
        const double half_scale = std::pow(0.5, 1.0 / alpha);
        std::vector<double> half(window);
        std::vector<double> fine(fine_hi + shift + 1);
        std::vector<double> coarse(max_lag + 1);
        for (std::size_t s = lo; s < hi; ++s) {
            bool ok = false;
            while (!ok) {
                ok = true;
                // half[i + shift] holds the iid standard draw for the i-th
                // half-spacing increment; the (1/2)^(1/alpha) scale is applied
                // after filtering.
                for (auto& v : half) v = rs.stable(alpha);
                for (int j = -shift; j <= fine_hi; ++j) {
                    double acc_f = 0.0;
                    for (std::size_t l = 0; l < K; ++l)
                        acc_f += b[l] * half[static_cast<std::size_t>(j + shift) + l];
                    fine[static_cast<std::size_t>(j + shift)] = acc_f * half_scale;
                    if (acc_f == 0.0) ok = false;
                }
                for (int k = 0; k <= max_lag; ++k) {
                    double acc_c = 0.0;
                    for (std::size_t l = 0; l < K; ++l)
                        acc_c += b[l] * (half[2 * (k + static_cast<int>(l)) + shift] +
                                         half[2 * (k + static_cast<int>(l)) + shift + 1]);
                    coarse[static_cast<std::size_t>(k)] = acc_c * half_scale;
                    if (acc_c == 0.0) ok = false;
                }
            }
            for (std::size_t q = 0; q < specs.size(); ++q) {
                const McSpec& sp = specs[q];
                const double first =
                    sp.fine ? std::pow(std::abs(fine[static_cast<std::size_t>(sp.idx_first + shift)]),
                                       sp.bfirst)
                            : std::pow(std::abs(coarse[static_cast<std::size_t>(sp.idx_first)]),
                                       sp.bfirst);
                const double second = std::pow(std::abs(coarse[0]), sp.bsecond);
                const double prod = first * second;
                acc.sum[q] += prod;
                acc.sumsq[q] += prod * prod;
            }
        }
        blocks[bi] = std::move(acc);
    });

    // Deterministic reduction in block order.
    std::vector<double> sum(specs.size(), 0.0), sumsq(specs.size(), 0.0);
    for (const auto& blk : blocks)
        for (std::size_t q = 0; q < specs.size(); ++q) {
            sum[q] += blk.sum[q];
            sumsq[q] += blk.sumsq[q];
        }

    const double nd = static_cast<double>(mc_samples);
    for (std::size_t q = 0; q < specs.size(); ++q) {
        const McSpec& sp = specs[q];
        const double mean = sum[q] / nd;
        const double var = std::max(0.0, sumsq[q] / nd - mean * mean);
        LevyCovEntry& e = table.entries[sp.entry_idx];
        e.value = mean - sp.mean_first * sp.mean_second;
        e.se = std::sqrt(var / nd);
        const double floor = 1e-3 * std::abs(sp.mean_first * sp.mean_second);
        e.flagged = e.se > 0.05 * std::abs(e.value) + floor;
    }
    return table;
}

// --- Levy-model Gamma assembly ----------------------------------------------

namespace {

struct LevyMarginals {
    double scale;
    double moment;   // E|D_{0,1}|^beta
    double variance; // var |D_{0,1}|^beta, closed form
};

LevyMarginals levy_marginals(double alpha, const Filter& f, double beta) {
    LevyMarginals m;
    m.scale = levy_filtered_scale(f, alpha);
    const double m1 = neg_moment_closed_form(alpha, beta);
    const double m2 = neg_moment_closed_form(alpha, 2.0 * beta);
    m.moment = std::pow(m.scale, beta) * m1;
    m.variance = std::pow(m.scale, 2.0 * beta) * (m2 - m1 * m1);
    return m;
}

double table_se_max(const LevyCovTable& t) {
    double m = 0.0;
    for (const auto& e : t.entries) m = std::max(m, e.se);
    return m;
}

bool table_flagged(const LevyCovTable& t) {
    for (const auto& e : t.entries)
        if (e.flagged) return true;
    return false;
}

} // namespace

AsymptoticVariance hurst_clt_variance_levy(double alpha, const Filter& f, double beta,
                                           const LevyCovTable& table) {
    if (!table.with_fine_scale)
        throw validation_error("hurst_clt_variance_levy: table lacks the fine-scale entries");
    const int K = static_cast<int>(f.order());
    if (table.max_lag < K - 1)
        throw validation_error("hurst_clt_variance_levy: table lag range is too short");

    const LevyMarginals mg = levy_marginals(alpha, f, beta);
    const double hurst = 1.0 / alpha;

    // Asymptotic variance of the full-resolution statistic: lag-zero variance
    // (closed form) plus the (K-1)-dependent covariance tail. The
    // half-resolution statistic averages half as many summands, doubling it.
    double s_full = mg.variance;
    for (int k = 1; k <= K - 1; ++k) s_full += 2.0 * table.coarse(beta, beta, k).value;
    const double g11 = s_full;
    const double g22 = 2.0 * s_full;

    const double fine_factor = std::pow(2.0, beta * hurst);
    double g12 = table.fine_coarse(beta, 0, 0).value + table.fine_coarse(beta, 1, 0).value;
    for (int k = 1; k <= K - 1; ++k)
        g12 += table.fine_coarse(beta, 0, k).value + table.fine_coarse(beta, 1, k).value;
    for (int p = 1; p <= K - 1; ++p)
        g12 += table.fine_coarse(beta, 2 * p, 0).value + table.fine_coarse(beta, 2 * p + 1, 0).value;
    g12 *= fine_factor;

    AsymptoticVariance av;
    av.mc_samples = table.mc_samples;
    av.mc_max_se = table_se_max(table);
    av.flagged = table_flagged(table);
    av.gamma[0][0] = g11;
    av.gamma[0][1] = av.gamma[1][0] = g12;
    av.gamma[1][1] = g22;
    const double c = 1.0 / (beta * std::numbers::ln2 * mg.moment);
    av.gradient[0] = -c;
    av.gradient[1] = c;
    av.value = c * c * (g11 - 2.0 * g12 + g22);
    return av;
}

AsymptoticVariance stability_clt_variance_levy(double alpha, const Filter& f, double beta1,
                                               double beta2, const LevyCovTable& table) {
    const int K = static_cast<int>(f.order());
    if (table.max_lag < K - 1)
        throw validation_error("stability_clt_variance_levy: table lag range is too short");
    const LevyMarginals m1 = levy_marginals(alpha, f, beta1);
    const LevyMarginals m2 = levy_marginals(alpha, f, beta2);

    double s11 = m1.variance;
    double s22 = m2.variance;
    double s12 = table.coarse(beta1, beta2, 0).value; // exact lag-zero cross moment
    for (int k = 1; k <= K - 1; ++k) {
        s11 += 2.0 * table.coarse(beta1, beta1, k).value;
        s22 += 2.0 * table.coarse(beta2, beta2, k).value;
        s12 += table.coarse(beta2, beta1, k).value + table.coarse(beta1, beta2, k).value;
    }

    AsymptoticVariance av;
    av.mc_samples = table.mc_samples;
    av.mc_max_se = table_se_max(table);
    av.flagged = table_flagged(table);
    av.gamma[0][0] = s11;
    av.gamma[0][1] = av.gamma[1][0] = s12;
    av.gamma[1][1] = s22;

    const OrderPair uv{-beta1, -beta2};
    const double contrast = moment_contrast(uv, m1.moment, m2.moment);
    const double alpha0 = alpha_signature_inverse(uv, contrast);
    const double slope = alpha_signature_derivative(uv, alpha0);
    av.gradient[0] = -uv.v / (m1.moment * slope);
    av.gradient[1] = uv.u / (m2.moment * slope);
    av.value = av.gradient[0] * (s11 * av.gradient[0] + s12 * av.gradient[1]) +
               av.gradient[1] * (s12 * av.gradient[0] + s22 * av.gradient[1]);
    return av;
}

std::string to_text(const AsymptoticVariance& av) {
    char buf[512];
    std::string out;
    std::snprintf(buf, sizeof(buf), "value = %.17g\n", av.value);
    out += buf;
    std::snprintf(buf, sizeof(buf), "gamma = [[%.17g, %.17g], [%.17g, %.17g]]\n", av.gamma[0][0],
                  av.gamma[0][1], av.gamma[1][0], av.gamma[1][1]);
    out += buf;
    std::snprintf(buf, sizeof(buf), "gradient = [%.17g, %.17g]\n", av.gradient[0], av.gradient[1]);
    out += buf;
    if (av.mc_samples > 0) {
        std::snprintf(buf, sizeof(buf), "mc_samples = %zu\nmc_max_se = %.6g\n", av.mc_samples,
                      av.mc_max_se);
        out += buf;
    } else {
        std::snprintf(buf, sizeof(buf), "q_max = %d\nr_max = %ld\nq_tail = %.6g\nr_tail = %.6g\n",
                      av.q_max, av.r_max, av.q_tail, av.r_tail);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "flagged = %d\n", av.flagged ? 1 : 0);
    out += buf;
    if (!av.note.empty()) out += "note = " + av.note + "\n";
    return out;
}

} // namespace stabest
