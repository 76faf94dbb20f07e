// rng.hpp
// Counter-based random numbers. Every draw is a pure function of
// (seed, stream, counter): parallel consumers draw independently, and a rerun
// with the same seed reproduces the exact same bits on any platform.
// Gaussians go through an inverse-CDF so no rejection state is involved.

#pragma once

#include <cstdint>

namespace vpl {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

} // namespace detail

// Inverse of the standard normal CDF (Wichura's PPND16 rational
// approximation, good to ~1e-16 over (0,1)). Used instead of
// std::normal_distribution, whose output is implementation-defined.
double inverse_normal_cdf(double p);

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(detail::mix64(detail::mix64(seed + 0x9E3779B97F4A7C15ULL) ^
                             (stream * 0xD1B54A32D192ED03ULL + 1))) {}

    std::uint64_t bits(std::uint64_t counter) const {
        return detail::mix64(key_ + counter * 0x9E3779B97F4A7C15ULL);
    }

    // Uniform in the open interval (0,1).
    double uniform01(std::uint64_t counter) const {
        return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via inverse CDF.
    double normal(std::uint64_t counter) const {
        return inverse_normal_cdf(uniform01(counter));
    }

    // +1 or -1 with equal probability.
    double pm1(std::uint64_t counter) const {
        return (bits(counter) & 1) ? 1.0 : -1.0;
    }

private:
    std::uint64_t key_;
};

} // namespace vpl
