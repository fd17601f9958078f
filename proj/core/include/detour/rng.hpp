#pragma once

#include <cstdint>

namespace detour {

// splitmix64: tiny, well-mixed, and identical on every platform. Used for
// every seeded draw in the project so results are reproducible bit-for-bit.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53-bit resolution
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // uniform in [-bound, bound)
    double next_symmetric(double bound) {
        return bound * (2.0 * next_double() - 1.0);
    }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        return next() % n;
    }

private:
    std::uint64_t state_;
};

} // namespace detour
