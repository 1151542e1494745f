#ifndef PAVEIRI_RNG_HPP
#define PAVEIRI_RNG_HPP

#include <cmath>
#include <cstdint>
#include <vector>

namespace paveiri {

/// splitmix64 generator (Steele, Lea, Vigna). Chosen because the entire
/// state-transition is pinned by two magic constants, so streams are
/// reproducible bit-for-bit across platforms and compilers. All randomized
/// steps in the library (synthesis, shuffling) draw from this generator.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound) by rejection, so every value is
    /// equally likely regardless of bound.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % bound;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Standard normal via Box-Muller on two fresh uniforms. The spare value
    /// is discarded to keep the draw count per call fixed.
    double normal(double mean, double stddev) {
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Normal redrawn until it lands in [lo, hi].
    double truncated_normal(double mean, double stddev, double lo, double hi) {
        for (;;) {
            const double v = normal(mean, stddev);
            if (v >= lo && v <= hi) return v;
        }
    }

    /// Exponential with the given mean, by inverse CDF.
    double exponential(double mean) {
        double u = next_double();
        while (u <= 0.0) u = next_double();
        return -mean * std::log(u);
    }

private:
    std::uint64_t state_;
};

/// In-place Fisher-Yates shuffle driven by SplitMix64. This exact loop is
/// the seeded-shuffle contract behind train/test splitting: for i from n-1
/// down to 1, swap v[i] with v[rng.next_below(i+1)].
template <typename T>
void fisher_yates_shuffle(std::vector<T>& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace paveiri

#endif  // PAVEIRI_RNG_HPP
