#include "stabest/processes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "stabest/errors.hpp"
#include "stabest/fft.hpp"

namespace stabest {

namespace {

constexpr std::size_t kCholeskyCap = 4096;

// Autocovariance of the unit-spacing increment sequence of the H-self-similar
// Gaussian path with E X(1)^2 = v0.
double fgn_autocov(double hurst, double v0, std::size_t lag) {
    const double k = static_cast<double>(lag);
    const double two_h = 2.0 * hurst;
    return 0.5 * v0 *
           (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) +
            std::pow(std::abs(k - 1.0), two_h));
}

std::vector<double> fgn_cholesky(const FbmParams& p, std::size_t n, RandomStream& rs) {
    if (n > kCholeskyCap)
        throw validation_error("simulate_fbm: dense path needs n <= " +
                               std::to_string(kCholeskyCap) +
                               " (use a power-of-two n for the embedding path)");
    std::vector<double> cov(n);
    for (std::size_t k = 0; k < n; ++k) cov[k] = fgn_autocov(p.hurst, p.unit_variance, k);

    // Lower Cholesky factor of the Toeplitz increment covariance.
    std::vector<double> L(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = cov[i - j];
            for (std::size_t k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
            if (i == j) {
                if (s <= 0.0) throw numeric_error("simulate_fbm: increment covariance not PD");
                L[i * n + i] = std::sqrt(s);
            } else {
                L[i * n + j] = s / L[j * n + j];
            }
        }
    }
    std::vector<double> z(n);
    for (auto& v : z) v = rs.gaussian();
    std::vector<double> incs(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j <= i; ++j) s += L[i * n + j] * z[j];
        incs[i] = s;
    }
    return incs;
}

// Davies-Harte circulant embedding; returns n unit-spacing increments.
// Falls back to Cholesky (via numeric_error) if the embedding happens to
// have a significantly negative eigenvalue.
std::vector<double> fgn_circulant(const FbmParams& p, std::size_t n, RandomStream& rs) {
    const std::size_t m = 2 * n;
    std::vector<std::complex<double>> c(m);
    for (std::size_t j = 0; j <= n; ++j) c[j] = fgn_autocov(p.hurst, p.unit_variance, j);
    for (std::size_t j = n + 1; j < m; ++j) c[j] = c[m - j];
    fft_pow2(c, false);

    double min_ev = 0.0, max_ev = 0.0;
    for (const auto& z : c) {
        min_ev = std::min(min_ev, z.real());
        max_ev = std::max(max_ev, z.real());
    }
    if (min_ev < -1e-9 * max_ev)
        throw numeric_error("simulate_fbm: circulant embedding not nonnegative definite");

    std::vector<std::complex<double>> w(m);
    const double md = static_cast<double>(m);
    w[0] = std::sqrt(std::max(0.0, c[0].real()) * md) * rs.gaussian();
    for (std::size_t j = 1; j < n; ++j) {
        const double sd = std::sqrt(std::max(0.0, c[j].real()) * md / 2.0);
        const double re = sd * rs.gaussian();
        const double im = sd * rs.gaussian();
        w[j] = {re, im};
        w[m - j] = {re, -im};
    }
    w[n] = std::sqrt(std::max(0.0, c[n].real()) * md) * rs.gaussian();

    fft_pow2(w, true); // conjugate-symmetric input: output is real fGn * m, scaled back by 1/m
    std::vector<double> incs(n);
    for (std::size_t j = 0; j < n; ++j) incs[j] = w[j].real();
    return incs;
}

std::vector<double> cumulative_path(std::span<const double> incs, double scale) {
    std::vector<double> values(incs.size() + 1);
    values[0] = 0.0;
    for (std::size_t k = 0; k < incs.size(); ++k) values[k + 1] = values[k] + scale * incs[k];
    return values;
}

} // namespace

const char* model_name(Model m) {
    switch (m) {
        case Model::fbm: return "fbm";
        case Model::levy: return "levy";
        case Model::lfsm: return "lfsm";
        case Model::takenaka: return "takenaka";
    }
    return "?";
}

Model model_from_name(const std::string& name) {
    if (name == "fbm") return Model::fbm;
    if (name == "levy") return Model::levy;
    if (name == "lfsm") return Model::lfsm;
    if (name == "takenaka") return Model::takenaka;
    throw validation_error("unknown model '" + name + "'");
}

void validate_params(const FbmParams& p) {
    if (!(p.hurst > 0.0 && p.hurst < 1.0))
        throw validation_error("fbm: H must lie in (0,1), got " + std::to_string(p.hurst));
    if (!(p.unit_variance > 0.0)) throw validation_error("fbm: E X(1)^2 must be positive");
}

void validate_params(const LevyParams& p) {
    if (!(p.alpha > 0.0 && p.alpha <= 2.0))
        throw validation_error("levy: alpha must lie in (0,2], got " + std::to_string(p.alpha));
    if (p.alpha == 1.0 && !p.allow_alpha_one)
        throw validation_error("levy: alpha = 1 requires the explicit opt-in flag");
}

void validate_params(const LfsmParams& p) {
    if (!(p.hurst > 0.0 && p.hurst < 1.0))
        throw validation_error("lfsm: H must lie in (0,1), got " + std::to_string(p.hurst));
    if (!(p.alpha > 0.0 && p.alpha < 2.0))
        throw validation_error("lfsm: alpha must lie in (0,2), got " + std::to_string(p.alpha));
    if (std::abs(p.hurst - 1.0 / p.alpha) < 1e-10)
        throw validation_error("lfsm: H = 1/alpha is excluded (kernel degenerates)");
    if (!(p.kernel_halfwidth > 1.0))
        throw validation_error("lfsm: kernel halfwidth T must exceed 1");
    if (p.mesh_div == 0) throw validation_error("lfsm: mesh divisor must be positive");
}

void validate_params(const TakenakaParams& p) {
    if (!(p.nu > 0.0 && p.nu < 1.0))
        throw validation_error("takenaka: nu must lie in (0,1), got " + std::to_string(p.nu));
    if (!(p.alpha > 0.0 && p.alpha < 2.0))
        throw validation_error("takenaka: alpha must lie in (0,2), got " +
                               std::to_string(p.alpha));
    if (!(p.nu < p.alpha))
        throw validation_error("takenaka: self-similarity index nu/alpha must lie in (0,1)");
    if (p.r_min < 0.0 || p.r_max < 0.0 || (p.r_max != 0.0 && p.r_min >= p.r_max))
        throw validation_error("takenaka: need 0 < r_min < r_max (or 0 for defaults)");
    if (!(p.r_log_step > 0.0 && p.r_log_step < 1.0))
        throw validation_error("takenaka: radius log step must lie in (0,1)");
}

SamplePath simulate_fbm(const FbmParams& p, std::size_t n, SeedSpec seed) {
    validate_params(p);
    if (n < 2) throw validation_error("simulate_fbm: n must be at least 2");
    RandomStream rs(seed);

    std::vector<double> incs;
    if (is_power_of_two(n)) {
        try {
            incs = fgn_circulant(p, n, rs);
        } catch (const numeric_error&) {
            RandomStream fresh(seed);
            incs = fgn_cholesky(p, n, fresh);
        }
    } else {
        incs = fgn_cholesky(p, n, rs);
    }

    SamplePath path;
    path.model = Model::fbm;
    path.n = n;
    path.params = p;
    path.seed = seed;
    path.values = cumulative_path(incs, std::pow(static_cast<double>(n), -p.hurst));
    return path;
}

SamplePath simulate_levy(const LevyParams& p, std::size_t n, SeedSpec seed) {
    validate_params(p);
    if (n < 2) throw validation_error("simulate_levy: n must be at least 2");
    RandomStream rs(seed);
    std::vector<double> incs(n);
    for (auto& v : incs) v = rs.stable(p.alpha);

    SamplePath path;
    path.model = Model::levy;
    path.n = n;
    path.params = p;
    path.seed = seed;
    path.values = cumulative_path(incs, std::pow(static_cast<double>(n), -1.0 / p.alpha));
    return path;
}

// ---------------------------------------------------------------------------
// LFSM: moving-average kernel sampled on a regular mesh; the t-sums are a
// discrete convolution, evaluated with one FFT per path.
// ---------------------------------------------------------------------------

namespace {

struct LfsmGrid {
    std::size_t q;      // cells per grid step
    std::size_t big_m;  // cells in each kernel wing: T q n (T rounded up to the cell grid)
    std::size_t cells;  // q n + 2 big_m
    double mesh;        // 1/(q n)
};

LfsmGrid lfsm_grid(const LfsmParams& p, std::size_t n) {
    LfsmGrid g;
    g.q = p.mesh_div;
    const double m_exact = p.kernel_halfwidth * static_cast<double>(g.q) * static_cast<double>(n);
    g.big_m = static_cast<std::size_t>(std::ceil(m_exact - 1e-9));
    g.cells = g.q * n + 2 * g.big_m;
    g.mesh = 1.0 / (static_cast<double>(g.q) * static_cast<double>(n));
    return g;
}

} // namespace

std::size_t lfsm_cell_count(const LfsmParams& p, std::size_t n) {
    validate_params(p);
    return lfsm_grid(p, n).cells;
}

SamplePath lfsm_from_noise(const LfsmParams& p, std::size_t n, std::span<const double> noise) {
    validate_params(p);
    if (n < 2) throw validation_error("simulate_lfsm: n must be at least 2");
    const LfsmGrid g = lfsm_grid(p, n);
    if (noise.size() != g.cells)
        throw validation_error("lfsm_from_noise: expected " + std::to_string(g.cells) +
                               " noise cells, got " + std::to_string(noise.size()));

    const double exponent = p.hurst - 1.0 / p.alpha;
    const double cell_scale = std::pow(g.mesh, 1.0 / p.alpha);
    const std::size_t qn = g.q * n;

    std::vector<double> w(g.cells);
    for (std::size_t j = 0; j < g.cells; ++j) w[j] = cell_scale * noise[j];

    // Kernel |t - x|^gamma sampled at cell midpoints: index i covers
    // t - x = mesh (i - 1/2), i in [-(big_m + qn) + 1, big_m + qn].
    const std::size_t kern_len = 2 * (g.big_m + qn);
    const long long i_min = -static_cast<long long>(g.big_m + qn) + 1;
    std::vector<double> kern(kern_len);
    for (std::size_t t = 0; t < kern_len; ++t) {
        const double dist = std::abs((static_cast<double>(i_min + static_cast<long long>(t)) - 0.5) * g.mesh);
        kern[t] = std::pow(dist, exponent);
    }

    const std::vector<double> conv = convolve_real(kern, w);
    // X(k/n) = sum_j [kern(t_k - x_j) - kern(0 - x_j)] w_j; both terms sit on
    // the same convolution output, so X(0) is exactly zero.
    const std::size_t base = 2 * g.big_m + qn - 1;
    SamplePath path;
    path.model = Model::lfsm;
    path.n = n;
    path.params = p;
    path.values.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) path.values[k] = conv[k * g.q + base] - conv[base];
    path.values[0] = 0.0;
    return path;
}

SamplePath simulate_lfsm(const LfsmParams& p, std::size_t n, SeedSpec seed) {
    validate_params(p);
    if (n < 2) throw validation_error("simulate_lfsm: n must be at least 2");
    const LfsmGrid g = lfsm_grid(p, n);
    RandomStream rs(seed);
    std::vector<double> noise(g.cells);
    for (auto& v : noise) v = rs.stable(p.alpha);
    SamplePath path = lfsm_from_noise(p, n, noise);
    path.seed = seed;
    return path;
}

// ---------------------------------------------------------------------------
// Takenaka: log-spaced radius rows; within a row the x-axis is partitioned by
// the exact endpoints {t_k - r, t_k + r} of every grid time, each partition
// atom carries an independent stable mass, and set sums are prefix-sum
// differences. Horizontal geometry is exact; only r is discretized.
// ---------------------------------------------------------------------------

bool takenaka_indicator(double t, double x, double r) {
    const bool in_t = std::abs(x - t) <= r;
    const bool in_0 = std::abs(x) <= r;
    return in_t != in_0;
}

void takenaka_effective_radius_range(const TakenakaParams& p, std::size_t n, double& r_min,
                                     double& r_max) {
    validate_params(p);
    r_min = p.r_min > 0.0 ? p.r_min : 1.0 / (4.0 * static_cast<double>(n));
    if (p.r_max > 0.0) {
        r_max = p.r_max;
    } else {
        // Tail-mass rule: 2 r^(nu-1)/(1-nu) <= 1e-3 for the omitted r > r_max.
        r_max = std::pow(5e-4 * (1.0 - p.nu), 1.0 / (p.nu - 1.0));
    }
    if (!(r_min < r_max))
        throw validation_error("takenaka: effective r_min must be below r_max");
}

SamplePath simulate_takenaka(const TakenakaParams& p, std::size_t n, SeedSpec seed) {
    validate_params(p);
    if (n < 2) throw validation_error("simulate_takenaka: n must be at least 2");
    double r_lo, r_hi;
    takenaka_effective_radius_range(p, n, r_lo, r_hi);

    RandomStream rs(seed);
    const double ratio = 1.0 + p.r_log_step;
    const double inv_n = 1.0 / static_cast<double>(n);
    const std::size_t pts = 2 * (n + 1);

    std::vector<double> values(n + 1, 0.0);
    std::vector<double> points(pts);
    std::vector<std::size_t> pos_low(n + 1), pos_high(n + 1); // merged positions of t_k -+ r
    std::vector<double> prefix(pts);

    double r_edge = r_lo;
    while (r_edge < r_hi) {
        const double r_next = std::min(r_edge * ratio, r_hi);
        const double r = std::sqrt(r_edge * r_next); // row radius (geometric midpoint)
        const double dr = r_next - r_edge;
        const double row_weight = std::pow(r, p.nu - 2.0) * dr; // control-measure density * dr

        // Merge the two arithmetic endpoint families -r + k/n and r + k/n.
        std::size_t ia = 0, ib = 0, out = 0;
        while (ia <= n || ib <= n) {
            const double av = -r + static_cast<double>(ia) * inv_n;
            const double bv = r + static_cast<double>(ib) * inv_n;
            if (ia <= n && (ib > n || av <= bv)) {
                pos_low[ia] = out;
                points[out++] = av;
                ++ia;
            } else {
                pos_high[ib] = out;
                points[out++] = bv;
                ++ib;
            }
        }

        // One stable mass per partition atom; prefix sums give interval sums.
        prefix[0] = 0.0;
        for (std::size_t t = 0; t + 1 < pts; ++t) {
            const double width = points[t + 1] - points[t];
            const double draw = rs.stable(p.alpha);
            const double mass =
                width > 0.0 ? std::pow(width * row_weight, 1.0 / p.alpha) * draw : 0.0;
            prefix[t + 1] = prefix[t] + mass;
        }

        // X(t_k) += mass(I_t) + mass(I_0) - 2 mass(I_t intersect I_0), with
        // I_t = [t_k - r, t_k + r) and I_0 = [-r, r).
        const double base_sum = prefix[pos_high[0]] - prefix[pos_low[0]];
        for (std::size_t k = 1; k <= n; ++k) {
            const double tk = static_cast<double>(k) * inv_n;
            const double it_sum = prefix[pos_high[k]] - prefix[pos_low[k]];
            double overlap = 0.0;
            if (tk < 2.0 * r) overlap = prefix[pos_high[0]] - prefix[pos_low[k]];
            values[k] += it_sum + base_sum - 2.0 * overlap;
        }

        r_edge = r_next;
    }

    SamplePath path;
    path.model = Model::takenaka;
    path.n = n;
    path.params = p;
    path.seed = seed;
    path.values = std::move(values);
    return path;
}

} // namespace stabest
