#include "stabest/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stabest {

void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("fft_pow2: size must be a power of two");
    if (n == 1) return;

    // bit reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }

    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& z : a) z *= inv;
    }
}

std::vector<double> convolve_real(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.empty() || y.empty()) return {};
    const std::size_t out_len = x.size() + y.size() - 1;
    const std::size_t m = next_power_of_two(out_len);
    std::vector<std::complex<double>> fx(m), fy(m);
    for (std::size_t i = 0; i < x.size(); ++i) fx[i] = x[i];
    for (std::size_t i = 0; i < y.size(); ++i) fy[i] = y[i];
    fft_pow2(fx, false);
    fft_pow2(fy, false);
    for (std::size_t i = 0; i < m; ++i) fx[i] *= fy[i];
    fft_pow2(fx, true);
    std::vector<double> out(out_len);
    for (std::size_t i = 0; i < out_len; ++i) out[i] = fx[i].real();
    return out;
}

} // namespace stabest
