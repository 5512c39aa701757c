#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "psamp/profile.hpp"

// Exact reference calculations for small instances, used by tests to certify
// the samplers. Everything here is computed by enumeration or exact big-int
// arithmetic, independent of the sampling code paths.
namespace psamp::oracle {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

BigInt factorial(std::uint64_t n);

// Stirling numbers of the second kind by the standard recurrence.
// Guarded to n <= 500.
BigInt stirling2(std::uint64_t n, std::uint64_t k);

// Natural log of a positive big integer, accurate to double precision.
double log_big(const BigInt& v);

enum class Ensemble { Mapping, Surjection };

// Exact law of the profile of a uniform random mapping (all k^n maps) or
// surjection (all k! * S(n,k) of them) from [n] to [k]. Keys are canonical
// profile pairs; values sum to exactly 1. Enumerates partitions of n into
// at most (mapping) or exactly (surjection) k positive parts; guarded to
// n <= 64.
std::map<std::vector<SizeCount>, BigRat> exact_profile_distribution(
    std::uint64_t n, std::uint64_t k, Ensemble ensemble);

// Probability that k iid zero-truncated Poisson(omega) variables sum to n,
// with omega the tilt parameter for (n, k):
//   k! * S(n,k) * omega^n / (n! * (e^omega - 1)^k).
// This is the per-round acceptance probability of the one-shot surjection
// sampler. Requires n > k >= 1 and n <= 3000 (Stirling table cost).
double exact_acceptance_probability(std::uint64_t n, std::uint64_t k);

// Pearson chi-square p-value of observed counts against expected counts
// (same total). Cells with expected count < 5 are pooled into one; if the
// pool stays below 5 it is folded into the smallest surviving cell. With
// fewer than two cells after pooling the test is vacuous and returns 1.
double chi_square_pvalue(const std::vector<std::uint64_t>& observed,
                         const std::vector<double>& expected);

// Total variation distance between an empirical distribution (counts) and
// exact probabilities given as doubles. Both vectors indexed identically;
// mass of outcomes never observed must still appear in expected.
double tv_distance(const std::vector<std::uint64_t>& observed,
                   const std::vector<double>& expected);

}  // namespace psamp::oracle
