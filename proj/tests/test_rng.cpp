#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "doctest.h"
#include "psamp/oracle.hpp"
#include "psamp/rng.hpp"
#include "psamp/special.hpp"

using psamp::RandomSource;

namespace {

// Chi-square goodness of fit of sampled values against an exact pmf given in
// log space. Values beyond max_value land in one overflow cell whose
// probability is the complementary mass.
double gof_pvalue(const std::vector<std::uint64_t>& draws, std::uint64_t max_value,
                  const std::function<double(std::uint64_t)>& log_pmf) {
    std::vector<std::uint64_t> observed(max_value + 2, 0);
    for (std::uint64_t d : draws) observed[d <= max_value ? d : max_value + 1] += 1;
    std::vector<double> expected(max_value + 2, 0.0);
    double mass = 0.0;
    for (std::uint64_t v = 0; v <= max_value; ++v) {
        const double p = std::exp(log_pmf(v));
        expected[v] = p * static_cast<double>(draws.size());
        mass += p;
    }
    expected[max_value + 1] = std::max(0.0, 1.0 - mass) * static_cast<double>(draws.size());
    return psamp::oracle::chi_square_pvalue(observed, expected);
}

struct CenteredMoments {
    double mean = 0.0;  // of (x - center)
    double sd = 0.0;
};

// Accumulates moments of x - center so that giant means do not wash out the
// spread in double arithmetic.
template <typename Draw>
CenteredMoments centered_moments(int reps, double center, Draw&& draw) {
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < reps; ++i) {
        const double d = draw() - center;
        sum += d;
        sumsq += d * d;
    }
    CenteredMoments m;
    m.mean = sum / reps;
    m.sd = std::sqrt(std::max(0.0, sumsq / reps - m.mean * m.mean));
    return m;
}

}  // namespace

TEST_CASE("streams are deterministic per seed and differ across seeds") {
    RandomSource a(12345), b(12345), c(54321);
    bool all_equal = true, any_equal_c = false;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t xa = a.next_u64();
        all_equal = all_equal && xa == b.next_u64();
        any_equal_c = any_equal_c || xa == c.next_u64();
    }
    CHECK(all_equal);
    CHECK(!any_equal_c);
}

TEST_CASE("uniform01 range and mean") {
    RandomSource rng(7);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("below covers the range uniformly and handles powers of two") {
    RandomSource rng(99);
    for (std::uint64_t bound : {1ull, 2ull, 3ull, 7ull, 8ull, 1000ull}) {
        std::vector<std::uint64_t> counts(bound, 0);
        const std::uint64_t reps = bound == 1 ? 10 : 20000;
        for (std::uint64_t i = 0; i < reps; ++i) {
            const std::uint64_t v = rng.below(bound);
            REQUIRE(v < bound);
            counts[v] += 1;
        }
        if (bound > 1 && bound <= 8) {
            std::vector<double> expected(bound, static_cast<double>(reps) /
                                                    static_cast<double>(bound));
            CHECK(psamp::oracle::chi_square_pvalue(counts, expected) > 1e-4);
        }
    }
    // Near-full-width bound exercises masked rejection at 64 bits.
    RandomSource wide(3);
    const std::uint64_t big = (std::uint64_t{1} << 63) + 5;
    for (int i = 0; i < 100; ++i) {
        CHECK(wide.below(big) < big);
    }
}

TEST_CASE("bernoulli edges are exact and consume no randomness") {
    RandomSource probe(11), reference(11);
    CHECK(!psamp::bernoulli(probe, 0.0));
    CHECK(psamp::bernoulli(probe, 1.0));
    CHECK(!psamp::bernoulli_log(probe, -std::numeric_limits<double>::infinity()));
    CHECK(psamp::bernoulli_log(probe, 0.0));
    CHECK(probe.next_u64() == reference.next_u64());

    CHECK_THROWS(psamp::bernoulli(probe, 1.5));
    CHECK_THROWS(psamp::bernoulli(probe, -0.5));
}

TEST_CASE("bernoulli frequency") {
    RandomSource rng(22);
    int hits = 0;
    const int reps = 200000;
    for (int i = 0; i < reps; ++i) hits += psamp::bernoulli(rng, 0.3);
    CHECK(std::fabs(hits / static_cast<double>(reps) - 0.3) <
          5.0 * std::sqrt(0.3 * 0.7 / reps));
    RandomSource rng2(23);
    hits = 0;
    for (int i = 0; i < reps; ++i) hits += psamp::bernoulli_log(rng2, std::log(0.3));
    CHECK(std::fabs(hits / static_cast<double>(reps) - 0.3) <
          5.0 * std::sqrt(0.3 * 0.7 / reps));
}

TEST_CASE("binomial matches the exact pmf across dispatch regimes") {
    // Cells straddle the inversion/rejection boundary np = 10 and the
    // complement branch p > 1/2.
    struct Cell { std::uint64_t n; double p; };
    const std::vector<Cell> cells{
        {1, 0.4},    {10, 0.2},  {40, 0.24}, {45, 0.22}, {50, 0.2},
        {47, 0.5},   {100, 0.3}, {100, 0.7}, {1000, 0.04}, {5000, 0.5},
    };
    std::uint64_t seed = 1000;
    for (const auto& cell : cells) {
        CAPTURE(cell.n);
        CAPTURE(cell.p);
        RandomSource rng(seed++);
        std::vector<std::uint64_t> draws(60000);
        for (auto& d : draws) d = psamp::binomial(rng, cell.n, cell.p);
        const auto np = static_cast<std::uint64_t>(static_cast<double>(cell.n) * cell.p);
        const std::uint64_t hi = std::min(cell.n, np + 60 + np / 2);
        const double pv = gof_pvalue(draws, hi, [&](std::uint64_t v) {
            return psamp::log_binomial_pmf(cell.n, cell.p, v).value;
        });
        CHECK(pv > 1e-4);
    }
}

TEST_CASE("binomial edges") {
    RandomSource rng(5);
    CHECK(psamp::binomial(rng, 0, 0.3) == 0);
    CHECK(psamp::binomial(rng, 17, 0.0) == 0);
    CHECK(psamp::binomial(rng, 17, 1.0) == 17);
    for (int i = 0; i < 1000; ++i) {
        CHECK(psamp::binomial(rng, 3, 0.9) <= 3);
    }
    CHECK_THROWS(psamp::binomial(rng, 10, 1.5));
}

TEST_CASE("binomial at giant n keeps the right mean and spread") {
    // n above the exact-double threshold exercises the halving split.
    const std::uint64_t n = std::uint64_t{1} << 60;
    const double p = 1e-13;
    const double mean = static_cast<double>(n) * p;   // ~115292
    const double sd = std::sqrt(mean);
    RandomSource rng(77);
    const int reps = 4000;
    const auto m = centered_moments(reps, mean, [&] {
        return static_cast<double>(psamp::binomial(rng, n, p));
    });
    CHECK(std::fabs(m.mean) < 6.0 * sd / std::sqrt(static_cast<double>(reps)));
    CHECK(m.sd / sd > 0.9);
    CHECK(m.sd / sd < 1.1);
}

TEST_CASE("poisson matches the exact pmf across dispatch regimes") {
    std::uint64_t seed = 2000;
    for (double lambda : {0.3, 2.0, 8.0, 9.9, 10.1, 30.0, 500.0}) {
        CAPTURE(lambda);
        RandomSource rng(seed++);
        std::vector<std::uint64_t> draws(60000);
        for (auto& d : draws) d = psamp::poisson(rng, lambda);
        const auto hi = static_cast<std::uint64_t>(lambda + 60.0 + lambda / 2.0);
        const double pv = gof_pvalue(draws, hi, [&](std::uint64_t v) {
            return psamp::log_poisson_pmf(lambda, v).value;
        });
        CHECK(pv > 1e-4);
    }
}

TEST_CASE("poisson at giant rate keeps the right mean and spread") {
    const double lambda = 1e16;   // beyond the split threshold 2^52
    RandomSource rng(88);
    const int reps = 3000;
    const double sd = std::sqrt(lambda);
    const auto m = centered_moments(reps, lambda, [&] {
        return static_cast<double>(psamp::poisson(rng, lambda));
    });
    CHECK(std::fabs(m.mean) < 6.0 * sd / std::sqrt(static_cast<double>(reps)));
    CHECK(m.sd / sd > 0.9);
    CHECK(m.sd / sd < 1.1);
    CHECK_THROWS(psamp::poisson(rng, 0.0));
    CHECK_THROWS(psamp::poisson(rng, -1.0));
}
