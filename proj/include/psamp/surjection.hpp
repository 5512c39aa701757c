#pragma once

#include <cstdint>

#include "psamp/mapping.hpp"
#include "psamp/profile.hpp"
#include "psamp/rng.hpp"

namespace psamp {

enum class SurjectionPath {
    // Dispatch on (n, k): n == k is deterministic, k <= n/ln(n) retries
    // mapping profiles until every cell is hit, otherwise truncated-Poisson
    // rejection rounds.
    Auto,
    // Force the mapping-retry path. Valid for any n >= k, but the no-empty-
    // cell probability decays fast once k is well above n/ln(n).
    Coupon,
    // Force truncated-Poisson rounds, block variant chosen by sign of 3k-n.
    Boltzmann,
    // Force the single-block round over sizes {1,2}. Requires 3k > n.
    Boltzmann13,
    // Force the paired-block round. Valid for any n > k; the per-round block
    // scan costs Theta(n/k), which Auto keeps below ln(n).
    BoltzmannGeneral,
};

struct SurjectionOptions {
    SurjectionPath path = SurjectionPath::Auto;
    // Cap on rejection rounds before the sampler gives up. Expected rounds
    // are O(1) on the coupon path, O(n/k) on the Boltzmann paths, so hitting
    // this indicates a defect rather than bad luck.
    std::uint64_t round_budget = 1'000'000'000;
    MappingOptions mapping;  // used by the coupon path
};

// Profile of a uniform random surjection [n] -> [k]. Requires n >= k >= 1.
Profile surjection_profile(RandomSource& rng, std::uint64_t n, std::uint64_t k,
                           const SurjectionOptions& options = {},
                           SamplerStats* stats = nullptr);

// Rejection baseline: k iid positive Poisson(omega) cells resampled until
// they sum to n. Exactly uniform, and each round accepts with the tilted
// ensemble's acceptance probability, so this is the reference the block
// samplers are certified against. Cross-checks and benchmarks only.
Profile surjection_profile_naive(RandomSource& rng, std::uint64_t n, std::uint64_t k,
                                 SamplerStats* stats = nullptr);

}  // namespace psamp
