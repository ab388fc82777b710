#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace socinf {

// Seeded generator with platform-independent derived draws. The standard
// distributions are implementation-defined, so draws are built from raw
// mt19937_64 output to keep files and reports identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [0, n); n > 0. Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[below(i)]);
        }
    }

    // Independent child stream, e.g. one per fold or per action.
    Rng fork(std::uint64_t salt) {
        std::seed_seq seq{static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32),
                          static_cast<std::uint32_t>(engine_()), static_cast<std::uint32_t>(engine_())};
        std::mt19937_64 child(seq);
        return Rng(child());
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace socinf

namespace socinf {

// SplitMix64 finalizer; derives independent seeds from (seed, salt).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace socinf
