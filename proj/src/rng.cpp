#include "stabest/rng.hpp"

#include <cmath>
#include <numbers>

#include "stabest/errors.hpp"

namespace stabest {
namespace {

std::uint64_t splitmix64_next(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a ^ (0x9E3779B97F4A7C15ull + (b << 6) + (b >> 2));
    (void)splitmix64_next(x);
    return splitmix64_next(x);
}

RandomStream::RandomStream(SeedSpec seed) {
    std::uint64_t x = mix64(seed.master_seed, seed.stream_index);
    for (auto& s : state_) s = splitmix64_next(x);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t RandomStream::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RandomStream::uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::gaussian() {
    if (has_cached_gaussian_) {
        has_cached_gaussian_ = false;
        return cached_gaussian_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    cached_gaussian_ = r * std::sin(a);
    has_cached_gaussian_ = true;
    return r * std::cos(a);
}

double RandomStream::stable(double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw validation_error("stable: alpha must lie in (0,2]");
    const double v = std::numbers::pi * (uniform01() - 0.5); // (-pi/2, pi/2)
    if (alpha == 1.0) return std::tan(v);                    // Cauchy branch, avoids 0/0
    const double w = -std::log(uniform01());                 // Exp(1)
    // Chambers-Mallows-Stuck, symmetric case; scale normalized so that the
    // characteristic function is exp(-|theta|^alpha).
    const double av = alpha * v;
    return (std::sin(av) / std::pow(std::cos(v), 1.0 / alpha)) *
           std::pow(std::cos(v - av) / w, (1.0 - alpha) / alpha);
}

} // namespace stabest
