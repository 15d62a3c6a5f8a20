#pragma once

#include <cstdint>
#include <utility>

namespace uqd {

/// Counter-based pseudo-random stream (splitmix64). Stream k of a given seed
/// starts at a scrambled counter derived from (seed, k), so trial k's draws
/// never depend on how many draws other trials made. That makes aggregate
/// sampling results independent of evaluation order and chunking.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : state_(mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1))) {}

    std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1).
    double uniform() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Two independent standard normals (Box-Muller; portable, unlike
    /// std::normal_distribution whose algorithm is implementation-defined).
    std::pair<double, double> gaussian_pair() noexcept;

private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace uqd
