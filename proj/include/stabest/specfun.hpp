#pragma once

namespace stabest {

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// Gamma'(x)/Gamma(x) for x > 0.
double digamma(double x);

// Normalizing constant of the Fourier transform of |x|^beta, beta in (-1,0):
// 2^(beta+1/2) Gamma((beta+1)/2) / Gamma(-beta/2).
double fourier_power_constant(double beta);

// E|X|^beta for standard symmetric alpha-stable X, via the Gamma-ratio
// closed form. Domain: alpha in (0,2], beta in (-1,0).
double neg_moment_closed_form(double alpha, double beta);

// Same moment evaluated through the characteristic-function integral
// (adaptive quadrature after the substitution t = y^alpha). Slower but
// independent of the closed form; serves as its oracle.
double neg_moment_via_cf(double alpha, double beta);

// E|N(0, s^2)|^beta = s^beta 2^(beta/2) Gamma((beta+1)/2) / sqrt(pi).
double neg_moment_gaussian(double s, double beta);

// Absolute values of the two negative variation orders used by the stability
// estimator: u = -beta1, v = -beta2 with 0 < v < u < 1/2.
struct OrderPair {
    double u;
    double v;
};

// Throws validation_error unless 0 < v < u < 1/2.
void validate_order_pair(const OrderPair& uv);

// u ln Gamma(1+v x) - v ln Gamma(1+u x); strictly decreasing on (0,inf),
// 0 at 0+ and -inf at +inf.
double gamma_balance(const OrderPair& uv, double x);

// gamma_balance evaluated at 1/alpha: the theoretical value of the moment
// contrast as a function of the stability index. Strictly increasing from
// -inf (alpha -> 0) to 0 (alpha -> +inf).
double alpha_signature(const OrderPair& uv, double alpha);

// Derivative of alpha_signature, via the digamma chain rule. Used by the
// delta method.
double alpha_signature_derivative(const OrderPair& uv, double alpha);

// Inverse of alpha_signature on (-inf, 0): bracketed root search. Tolerance
// |signature(x) - y| <= 1e-12 max(1,|y|). Throws on y >= 0 or bracket
// exhaustion.
double alpha_signature_inverse(const OrderPair& uv, double y);

// Constant term of the moment contrast.
double contrast_constant(const OrderPair& uv);

// -v ln x + u ln y + contrast_constant(uv), for x, y > 0. Evaluated on the
// two beta-variations it is invariant to the path scale, and on the exact
// moments it equals alpha_signature(uv, alpha).
double moment_contrast(const OrderPair& uv, double x, double y);

// 0 for s >= 0, alpha_signature_inverse(uv, s) for s < 0. Total function;
// the s >= 0 branch is the degenerate (flagged) stability estimate.
double alpha_from_contrast(const OrderPair& uv, double s);

} // namespace stabest
