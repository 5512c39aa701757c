#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "doctest.h"
#include "psamp/mapping.hpp"
#include "psamp/oracle.hpp"
#include "psamp/special.hpp"

using psamp::MappingOptions;
using psamp::Profile;
using psamp::RandomSource;
using psamp::SamplerStats;
using psamp::SizeCount;

namespace {

// Chi-square p-value of sampled profiles against the exact mapping law.
double law_pvalue(std::uint64_t n, std::uint64_t k, const MappingOptions& options,
                  std::uint64_t samples, std::uint64_t seed) {
    const auto law = psamp::oracle::exact_profile_distribution(
        n, k, psamp::oracle::Ensemble::Mapping);
    std::map<std::vector<SizeCount>, std::size_t> index;
    std::vector<double> expected;
    for (const auto& [pairs, rat] : law) {
        index.emplace(pairs, expected.size());
        expected.push_back(rat.convert_to<double>() * static_cast<double>(samples));
    }
    std::vector<std::uint64_t> observed(expected.size(), 0);
    RandomSource rng(seed);
    for (std::uint64_t i = 0; i < samples; ++i) {
        const Profile p = psamp::mapping_profile(rng, n, k, options);
        if (i < 64) {
            REQUIRE(!psamp::profile_validate(p, n, k, false).has_value());
        }
        const auto it = index.find(p.pairs());
        REQUIRE(it != index.end());
        observed[it->second] += 1;
    }
    return psamp::oracle::chi_square_pvalue(observed, expected);
}

}  // namespace

TEST_CASE("integer cube root") {
    CHECK(psamp::integer_cbrt(0) == 0);
    CHECK(psamp::integer_cbrt(1) == 1);
    CHECK(psamp::integer_cbrt(26) == 2);
    CHECK(psamp::integer_cbrt(27) == 3);
    CHECK(psamp::integer_cbrt(1000000000000ull) == 10000);
    CHECK(psamp::integer_cbrt(999999999999ull) == 9999);
    const std::uint64_t top = 2642245;  // floor((2^64 - 1)^(1/3))
    CHECK(psamp::integer_cbrt(~std::uint64_t{0}) == top);
}

TEST_CASE("degenerate shapes") {
    RandomSource rng(1);
    CHECK(psamp::mapping_profile(rng, 0, 3).pairs() ==
          std::vector<SizeCount>{{0, 3}});
    CHECK(psamp::mapping_profile(rng, 42, 1).pairs() ==
          std::vector<SizeCount>{{42, 1}});
    CHECK_THROWS(psamp::mapping_profile(rng, 4, 0));
}

TEST_CASE("deterministic given a seed") {
    RandomSource a(999), b(999);
    CHECK(psamp::mapping_profile(a, 1000000, 1000) ==
          psamp::mapping_profile(b, 1000000, 1000));
}

TEST_CASE("base-case sampler is uniform") {
    // k <= 8 stays in the conditional-binomial base case by default.
    CHECK(law_pvalue(4, 2, {}, 40000, 101) > 1e-4);
    CHECK(law_pvalue(6, 3, {}, 40000, 102) > 1e-4);
    CHECK(law_pvalue(2, 5, {}, 40000, 103) > 1e-4);  // k > n
}

TEST_CASE("recursive sampler is uniform") {
    // base_floor = 1 forces the halving recursion at oracle-checkable sizes.
    MappingOptions deep;
    deep.base_floor = 1;
    CHECK(law_pvalue(4, 2, deep, 40000, 201) > 1e-4);
    CHECK(law_pvalue(6, 3, deep, 40000, 202) > 1e-4);
    CHECK(law_pvalue(9, 4, deep, 30000, 203) > 1e-4);
}

TEST_CASE("poisson profile of a single cell reproduces the poisson law") {
    const double lambda = 3.3;
    RandomSource rng(7);
    std::vector<std::uint64_t> observed(30, 0);
    const std::uint64_t samples = 40000;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const Profile p = psamp::poisson_profile(rng, 1, lambda);
        const auto pairs = p.pairs();
        REQUIRE(pairs.size() == 1);
        REQUIRE(pairs[0].second == 1);
        const std::uint64_t v = pairs[0].first;
        observed[v < 29 ? v : 29] += 1;
    }
    std::vector<double> expected(30, 0.0);
    double mass = 0.0;
    for (std::uint64_t v = 0; v < 29; ++v) {
        const double p = psamp::log_poisson_pmf(lambda, v).prob();
        expected[v] = p * static_cast<double>(samples);
        mass += p;
    }
    expected[29] = (1.0 - mass) * static_cast<double>(samples);
    CHECK(psamp::oracle::chi_square_pvalue(observed, expected) > 1e-4);
}

TEST_CASE("poisson profile mass splits correctly across many cells") {
    // 40 iid Poisson(0.7) cells: the count of zero cells is Bin(40, e^-0.7).
    RandomSource rng(8);
    const std::uint64_t samples = 30000;
    std::vector<std::uint64_t> zeros(41, 0);
    for (std::uint64_t i = 0; i < samples; ++i) {
        const Profile p = psamp::poisson_profile(rng, 40, 0.7);
        std::uint64_t z = 0;
        for (const auto& [size, count] : p.pairs()) {
            if (size == 0) z = count;
        }
        zeros[z] += 1;
    }
    std::vector<double> expected(41, 0.0);
    for (std::uint64_t z = 0; z <= 40; ++z) {
        expected[z] = psamp::log_binomial_pmf(40, std::exp(-0.7), z).prob() *
                      static_cast<double>(samples);
    }
    CHECK(psamp::oracle::chi_square_pvalue(zeros, expected) > 1e-4);
}

TEST_CASE("naive rejection baseline is uniform and has the predicted cost") {
    const auto law = psamp::oracle::exact_profile_distribution(
        4, 2, psamp::oracle::Ensemble::Mapping);
    std::map<std::vector<SizeCount>, std::size_t> index;
    std::vector<double> expected;
    const std::uint64_t samples = 20000;
    for (const auto& [pairs, rat] : law) {
        index.emplace(pairs, expected.size());
        expected.push_back(rat.convert_to<double>() * static_cast<double>(samples));
    }
    std::vector<std::uint64_t> observed(expected.size(), 0);
    RandomSource rng(9);
    for (std::uint64_t i = 0; i < samples; ++i) {
        const Profile p = psamp::mapping_profile_naive(rng, 4, 2);
        observed[index.at(p.pairs())] += 1;
    }
    CHECK(psamp::oracle::chi_square_pvalue(observed, expected) > 1e-4);

    // At k = 1 each round accepts with probability Pr(Poisson(n) = n).
    const std::uint64_t n = 100;
    const double accept = psamp::log_poisson_pmf(static_cast<double>(n), n).prob();
    const double want_rounds = 1.0 / accept;   // ~25.1
    RandomSource rng2(10);
    const int reps = 2000;
    double rounds = 0.0;
    for (int i = 0; i < reps; ++i) {
        SamplerStats st;
        (void)psamp::mapping_profile_naive(rng2, n, 1, &st);
        rounds += static_cast<double>(st.rounds);
    }
    const double mean = rounds / reps;
    // Geometric rounds: sd ~ mean; allow 5 standard errors.
    CHECK(std::fabs(mean - want_rounds) <
          5.0 * want_rounds / std::sqrt(static_cast<double>(reps)));
}

TEST_CASE("recursion descends and stats accumulate at scale") {
    RandomSource rng(11);
    SamplerStats st;
    const Profile p = psamp::mapping_profile(rng, 1000000, 1000, {}, &st);
    CHECK(!psamp::profile_validate(p, 1000000, 1000, false).has_value());
    CHECK(st.recursion_depth >= 1);        // k = 1000 > max(8, cbrt(1e6))
    CHECK(st.rounds >= st.recursion_depth);
    CHECK(st.binomial_draws >= 1);
    CHECK(st.max_window >= 1);
}
