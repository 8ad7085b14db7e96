#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace stabest {

// In-place iterative radix-2 FFT. Size must be a power of two.
// inverse=true applies the conjugate transform and divides by the size.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse);

// Linear convolution of two real sequences via zero-padded FFT.
// Result length is x.size() + y.size() - 1.
std::vector<double> convolve_real(const std::vector<double>& x, const std::vector<double>& y);

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace stabest
