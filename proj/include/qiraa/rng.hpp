#pragma once

#include <cstdint>
#include <vector>

namespace qiraa {

/// SplitMix64 (Steele, Lea & Flood 2014). The generator is pinned here, not
/// taken from <random>, so that seeded shuffles and synthetic corpora are
/// byte-reproducible across platforms and standard-library versions.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Draw from [0, n) by 128-bit multiply-shift (Lemire reduction).
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>((static_cast<__uint128_t>(next()) * n) >> 64);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    uint64_t state_;
};

/// Stable per-stream seed derivation, so workers (trees, classes, grid cells)
/// can draw independently of scheduling order.
inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
    SplitMix64 g(master ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
    return g.next();
}

/// In-place Fisher-Yates shuffle driven by SplitMix64.
template <typename T>
void fisher_yates(std::vector<T>& v, SplitMix64& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace qiraa
