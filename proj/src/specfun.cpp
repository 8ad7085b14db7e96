#include "stabest/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "stabest/errors.hpp"
#include "stabest/quadrature.hpp"

namespace stabest {

namespace {

void require_beta_open(double beta) {
    if (!(beta > -1.0 && beta < 0.0))
        throw validation_error("beta must lie in (-1,0), got " + std::to_string(beta));
}

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw validation_error("alpha must lie in (0,2], got " + std::to_string(alpha));
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw validation_error("log_gamma: argument must be positive");
    return std::lgamma(x);
}

double digamma(double x) {
    if (!(x > 0.0)) throw validation_error("digamma: argument must be positive");
    // Shift to x >= 8 with psi(x) = psi(x+1) - 1/x, then Bernoulli asymptotics.
    double acc = 0.0;
    while (x < 8.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = std::log(x) - 0.5 * inv;
    series -= inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 -
                       inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0))))));
    return acc + series;
}

double fourier_power_constant(double beta) {
    require_beta_open(beta);
    const double log_c = (beta + 0.5) * std::numbers::ln2 +
                         std::lgamma(0.5 * (beta + 1.0)) - std::lgamma(-0.5 * beta);
    return std::exp(log_c);
}

double neg_moment_closed_form(double alpha, double beta) {
    require_alpha(alpha);
    require_beta_open(beta);
    const double log_m = beta * std::numbers::ln2 + std::lgamma(0.5 * (beta + 1.0)) +
                         std::lgamma(1.0 - beta / alpha) - 0.5 * std::log(std::numbers::pi) -
                         std::lgamma(1.0 - 0.5 * beta);
    return std::exp(log_m);
}

double neg_moment_via_cf(double alpha, double beta) {
    require_alpha(alpha);
    require_beta_open(beta);
    // (2 C_beta / sqrt(2 pi)) Int_0^inf e^{-y^alpha} y^{-beta-1} dy, with the
    // substitution t = y^alpha:
    //   = (2 C_beta / (alpha sqrt(2 pi))) Int_0^inf t^{c-1} e^{-t} dt, c = -beta/alpha.
    // The remaining power singularity on [0,1] is removed by t = v^(1/c).
    const double c = -beta / alpha;
    const double inv_c = 1.0 / c;
    const double head = integrate_adaptive(
        [inv_c](double v) { return std::exp(-std::pow(v, inv_c)); }, 0.0, 1.0, 1e-13) / c;

    double tail = 0.0;
    double lo = 1.0;
    for (int panel = 0; panel < 64; ++panel) {
        const double hi = lo * 2.0;
        const double piece = integrate_adaptive(
            [c](double t) { return std::pow(t, c - 1.0) * std::exp(-t); }, lo, hi, 1e-13);
        tail += piece;
        lo = hi;
        if (lo > 10.0 * (c + 5.0) && std::abs(piece) < 1e-16 * (head + tail)) break;
        if (panel == 63)
            throw numeric_error("neg_moment_via_cf: tail integration did not converge");
    }

    const double cb = fourier_power_constant(beta);
    return 2.0 * cb / (alpha * std::sqrt(2.0 * std::numbers::pi)) * (head + tail);
}

double neg_moment_gaussian(double s, double beta) {
    if (!(s > 0.0)) throw validation_error("neg_moment_gaussian: scale must be positive");
    require_beta_open(beta);
    const double log_m = beta * std::log(s) + 0.5 * beta * std::numbers::ln2 +
                         std::lgamma(0.5 * (beta + 1.0)) - 0.5 * std::log(std::numbers::pi);
    return std::exp(log_m);
}

void validate_order_pair(const OrderPair& uv) {
    if (!(uv.v > 0.0 && uv.v < uv.u && uv.u < 0.5))
        throw validation_error("order pair must satisfy 0 < v < u < 1/2");
}

double gamma_balance(const OrderPair& uv, double x) {
    validate_order_pair(uv);
    if (!(x > 0.0)) throw validation_error("gamma_balance: argument must be positive");
    return uv.u * std::lgamma(1.0 + uv.v * x) - uv.v * std::lgamma(1.0 + uv.u * x);
}

double alpha_signature(const OrderPair& uv, double alpha) {
    if (!(alpha > 0.0)) throw validation_error("alpha_signature: argument must be positive");
    return gamma_balance(uv, 1.0 / alpha);
}

double alpha_signature_derivative(const OrderPair& uv, double alpha) {
    validate_order_pair(uv);
    if (!(alpha > 0.0)) throw validation_error("alpha_signature_derivative: argument must be positive");
    // d/da g(1/a) = -g'(1/a)/a^2, g'(y) = u v (digamma(1+vy) - digamma(1+uy)).
    const double y = 1.0 / alpha;
    const double gp = uv.u * uv.v * (digamma(1.0 + uv.v * y) - digamma(1.0 + uv.u * y));
    return -gp / (alpha * alpha);
}

double alpha_signature_inverse(const OrderPair& uv, double y) {
    validate_order_pair(uv);
    if (!(y < 0.0))
        throw validation_error("alpha_signature_inverse: defined only for negative arguments");

    const double tol = 1e-12 * std::max(1.0, std::abs(y));

    // The signature increases strictly from -inf to 0 on (0,inf); grow a
    // bracket geometrically from [1e-6, 1e6].
    double lo = 1.0, hi = 1.0;
    double flo = alpha_signature(uv, lo), fhi = flo;
    while (flo > y) {
        lo *= 0.5;
        if (lo < 1e-6) throw numeric_error("alpha_signature_inverse: lower bracket exhausted");
        flo = alpha_signature(uv, lo);
    }
    while (fhi < y) {
        hi *= 2.0;
        if (hi > 1e6) throw numeric_error("alpha_signature_inverse: upper bracket exhausted");
        fhi = alpha_signature(uv, hi);
    }

    // Safeguarded secant/bisection; monotonicity keeps the bracket valid.
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double fx = alpha_signature(uv, x);
        if (std::abs(fx - y) <= tol) return x;
        if (fx < y) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        double secant = (fhi != flo) ? lo + (y - flo) * (hi - lo) / (fhi - flo) : 0.5 * (lo + hi);
        if (!(secant > lo && secant < hi)) secant = 0.5 * (lo + hi);
        // Alternate with plain bisection so the bracket provably shrinks.
        x = (it % 2 == 0) ? secant : 0.5 * (lo + hi);
        if (hi - lo <= 1e-15 * std::max(1.0, lo)) return 0.5 * (lo + hi);
    }
    return x;
}

double contrast_constant(const OrderPair& uv) {
    validate_order_pair(uv);
    const double u = uv.u, v = uv.v;
    return 0.5 * (u - v) * std::log(std::numbers::pi) + u * std::lgamma(1.0 + 0.5 * v) +
           v * std::lgamma(0.5 * (1.0 - u)) - v * std::lgamma(1.0 + 0.5 * u) -
           u * std::lgamma(0.5 * (1.0 - v));
}

double moment_contrast(const OrderPair& uv, double x, double y) {
    validate_order_pair(uv);
    if (!(x > 0.0 && y > 0.0))
        throw validation_error("moment_contrast: arguments must be positive");
    return -uv.v * std::log(x) + uv.u * std::log(y) + contrast_constant(uv);
}

double alpha_from_contrast(const OrderPair& uv, double s) {
    validate_order_pair(uv);
    if (s >= 0.0) return 0.0;
    return alpha_signature_inverse(uv, s);
}

} // namespace stabest
