#pragma once

#include <cstdint>
#include <random>

namespace psamp {

// Seedable deterministic randomness source. mt19937_64 is pinned by the
// C++ standard, so a seed reproduces the same stream on every platform.
// Single-owner: move-only, one consumer at a time.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    RandomSource(const RandomSource&) = delete;
    RandomSource& operator=(const RandomSource&) = delete;
    RandomSource(RandomSource&&) = default;
    RandomSource& operator=(RandomSource&&) = default;

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // 53-bit uniform in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound) by masked rejection. bound >= 1.
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

// Pr(true) = p. Accepts p in [-1e-9, 1+1e-9] and clamps; p = 0 and p = 1 are
// exact and consume no randomness.
bool bernoulli(RandomSource& rng, double p);

// Pr(true) = exp(log_p); log_p <= 0 up to fp slack, -inf means never.
bool bernoulli_log(RandomSource& rng, double log_p);

// Exact Binomial(n, p) variate, expected O(1) uniformly in n up to ~9e18:
// inversion when n p < 10, Hormann-style transformed rejection otherwise,
// exact halving splits above 2^53 so results stay integer-exact.
std::uint64_t binomial(RandomSource& rng, std::uint64_t n, double p);

// Exact Poisson(lambda) variate: multiplication inversion for lambda < 10,
// Hormann PTRD above, halving splits past 2^52.
std::uint64_t poisson(RandomSource& rng, double lambda);

}  // namespace psamp
