#pragma once
//
// Deterministic, platform-independent pseudo-random draws. All randomized
// sampling in the library and CLI flows through these helpers so that a
// fixed seed reproduces runs bit for bit.
//

#include <cstdint>

namespace seqlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stateless hash of (seed, key) into a 64-bit word.
inline std::uint64_t hash_pair(std::uint64_t seed, std::uint64_t key) {
    return splitmix64(seed ^ (key * 0x9e3779b97f4a7c15ULL));
}

class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53 significant bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // inclusive integer range
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<std::int64_t>(next() % span);
    }

    // dyadic rational m / 2^scale_bits with m an integer in [lo, hi]; products
    // of a few such values are exact in double precision
    double dyadic(std::int64_t lo, std::int64_t hi, int scale_bits) {
        return static_cast<double>(range(lo, hi)) / static_cast<double>(1LL << scale_bits);
    }

private:
    std::uint64_t state_;
};

}  // namespace seqlab
