#ifndef MINLABEL_PRNG_HPP
#define MINLABEL_PRNG_HPP

#include <cstdint>
#include <vector>

namespace minlabel {

/// SplitMix64: the pinned counter-based generator used everywhere a seed
/// appears (corpus splits, k-means++ sampling, stub backends, synthetic
/// corpora). Chosen so that identical seeds give identical results on any
/// platform; see README "Determinism".
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [-1, 1).
    double next_signed() { return 2.0 * next_double() - 1.0; }

    /// Uniform index in [0, n). n must be > 0.
    std::size_t next_index(std::size_t n) {
        return static_cast<std::size_t>(next_u64() % n);
    }

    /// Fisher-Yates shuffle, in place.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = next_index(i);
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t state_;
};

} // namespace minlabel

#endif
