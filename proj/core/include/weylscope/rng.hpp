#pragma once

#include <cstdint>

namespace weylscope {

/// splitmix64: tiny, fast, reproducible across platforms. Standard-library
/// distributions are implementation-defined, so all stochastic choices in
/// experiments go through this generator.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1p-53; }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        // modulo bias is irrelevant at the n << 2^64 scales used here
        return next() % n;
    }

    /// Derives an independent stream for work unit `index` (per-cell seeds).
    static SplitMix64 for_unit(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 mixer(seed ^ (0x9e3779b97f4a7c15ull + index * 0xda942042e4dd58b5ull));
        mixer.next();
        return mixer;
    }

  private:
    std::uint64_t state_;
};

} // namespace weylscope
