#pragma once

#include <cstdint>
#include <vector>

#include "psamp/profile.hpp"
#include "psamp/rng.hpp"

namespace psamp {

struct MappingOptions {
    // The recursion hands off to the direct multinomial base case when
    // k <= max(base_floor, cbrt(n)). Lowering the floor (tests use 1) forces
    // deep recursion on instances small enough to check against exact
    // enumeration.
    std::uint64_t base_floor = 8;
};

// Samples profiles of k iid Poisson(lambda) cells, sweeping outward from the
// mode with one binomial draw per size. Conditional tail probabilities are
// computed once per size and reused across samples, so repeated draws with
// the same lambda cost only the binomials.
class PoissonProfiler {
public:
    explicit PoissonProfiler(double lambda);

    Profile sample(RandomSource& rng, std::uint64_t k, SamplerStats* stats = nullptr);

    double lambda() const { return lambda_; }

private:
    double right_at(std::uint64_t i);  // Pr(X = mode+i | X >= mode+i)
    double left_at(std::uint64_t i);   // Pr(X = mode-1-i | X <= mode-1-i)

    double lambda_;
    std::uint64_t mode_;
    double p_top_;  // Pr(X >= mode)
    std::vector<double> right_;
    std::vector<double> left_;
};

// One-shot convenience wrapper around PoissonProfiler.
Profile poisson_profile(RandomSource& rng, std::uint64_t k, double lambda,
                        SamplerStats* stats = nullptr);

// Profile of Multinomial(n; k equal cells) via the chain of conditional
// binomials Bin(remaining, 1/(k-i)), then sort. Exact for every k but costs
// Theta(k) draws, so the recursive sampler only uses it at small k.
Profile small_k_profile(RandomSource& rng, std::uint64_t n, std::uint64_t k,
                        SamplerStats* stats = nullptr);

// Rejection baseline: k iid Poisson(n/k) cells resampled until they sum to
// n. Exactly uniform; expected rounds grow like sqrt(n), so this is only for
// cross-checks and benchmarks.
Profile mapping_profile_naive(RandomSource& rng, std::uint64_t n, std::uint64_t k,
                              SamplerStats* stats = nullptr);

// Profile of a uniform random mapping [n] -> [k]. Halves the cell range per
// accepted round: the left half is a Poisson profile accepted against the
// mode of the right half's sum, which keeps per-level acceptance above a
// constant; the right half recurses with a fresh tilt.
Profile mapping_profile(RandomSource& rng, std::uint64_t n, std::uint64_t k,
                        const MappingOptions& options = {},
                        SamplerStats* stats = nullptr);

// floor(n^(1/3)), exact.
std::uint64_t integer_cbrt(std::uint64_t n);

}  // namespace psamp
