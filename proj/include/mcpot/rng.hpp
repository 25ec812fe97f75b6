#pragma once

#include <cstdint>

namespace mcpot {

/// Counter-based pseudo-random generator (splitmix64 finalizer over a keyed
/// counter). Streams derived from (seed, stream) are independent, so chains
/// simulated in any order or in parallel reproduce bit-identically.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(mix(seed) ^ (0x9E3779B97F4A7C15ULL * (stream + 1)))) {}

    std::uint64_t next_u64() {
        std::uint64_t z = key_ + 0x9E3779B97F4A7C15ULL * ++counter_;
        return mix(z);
    }

    /// Uniform draw in the open interval (0, 1).
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Deterministic sub-seed for task decomposition (station/window/estimator).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                                std::uint64_t c = 0) {
        std::uint64_t h = mix(seed);
        h = mix(h ^ (a + 0x9E3779B97F4A7C15ULL));
        h = mix(h ^ (b + 0xBF58476D1CE4E5B9ULL));
        h = mix(h ^ (c + 0x94D049BB133111EBULL));
        return h;
    }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace mcpot
