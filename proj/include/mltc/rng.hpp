#pragma once

#include <cstdint>
#include <vector>

namespace mltc {

// Deterministic PRNG used everywhere randomness is needed. splitmix64 is
// portable across compilers and standard libraries, unlike
// std::uniform_int_distribution / std::shuffle, whose outputs are
// implementation-defined. Every seeded run must be byte-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, n) via rejection sampling.
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Inclusive integer range.
    int next_range(int lo, int hi) {
        return lo + int(next_below(std::uint64_t(hi - lo + 1)));
    }

    // In-place Fisher-Yates shuffle of index vector content.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = std::size_t(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

// Stable seed derivation for sub-units of work (per-label models, bagging
// members, forest trees, boosting rounds). hash_seed(s, i) streams are
// independent for distinct i.
inline std::uint64_t mix_u64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_seed(std::uint64_t seed, std::uint64_t index) {
    return mix_u64(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
}

inline std::uint64_t hash_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return hash_seed(hash_seed(seed, a), b);
}

}  // namespace mltc
