#pragma once

#include <cstdint>

namespace stabest {

// Key for a deterministic random stream. Identical (master_seed, stream_index)
// reproduces the identical variate sequence regardless of thread count or
// platform; distinct stream indices give streams with no shared state.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

// Stable 64-bit mix used wherever a derived stream index is needed
// (e.g. decoupling (n, replication) pairs in experiment campaigns).
std::uint64_t mix64(std::uint64_t a, std::uint64_t b);

// Value-type xoshiro256++ stream. State is derived from the seed key by a
// splitmix64 chain, so construction is cheap and safe from any thread; each
// stream instance is meant to be consumed by a single worker.
class RandomStream {
  public:
    explicit RandomStream(SeedSpec seed);

    std::uint64_t next_u64();

    // Uniform on the open interval (0,1); never returns 0 or 1, so logs are safe.
    double uniform01();

    // Standard normal via Box-Muller (second variate cached).
    double gaussian();

    // Standard symmetric alpha-stable draw, characteristic function
    // exp(-|theta|^alpha). At alpha=2 this is N(0,2), not N(0,1).
    // Requires 0 < alpha <= 2; alpha=1 uses the dedicated Cauchy branch.
    double stable(double alpha);

  private:
    std::uint64_t state_[4];
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

} // namespace stabest
