#pragma once

#include <cstdint>

#include "psamp/logprob.hpp"

namespace psamp {

// Log-space Poisson/binomial kernels used by every sampler. All pmf values
// are computed through Stirling-tail-grouped expressions so the absolute
// error stays ~1e-12 even when the naive "j ln l - l - lgamma(j+1)" form
// would cancel catastrophically (parameters up to ~9e18 appear in the
// mapping recursion).

// ln Pr(Poisson(lambda) = j). lambda > 0.
LogProb log_poisson_pmf(double lambda, std::uint64_t j);

enum class TailSide { AtLeast, AtMost };

// ln Pr(Poisson(lambda) >= j) or ln Pr(Poisson(lambda) <= j).
LogProb poisson_tail(double lambda, std::uint64_t j, TailSide side);

// Pr(X = j | X >= j) and Pr(X = j | X <= j) for X ~ Poisson(lambda),
// clamped into [0, 1]. When the conditioning tail is numerically zero
// (log < -700) the conditional collapses to 1, which terminates sweeps
// deterministically without biasing any event of probability > 1e-300.
// These equal the truncated-Poisson conditionals for j >= 1.
double poisson_cond_right(double lambda, std::uint64_t j);
double poisson_cond_left(double lambda, std::uint64_t j);

// ln Pr(Binomial(n, v) = j). v in [0,1] (1e-9 slack), j <= n.
LogProb log_binomial_pmf(std::uint64_t n, double v, std::uint64_t j);

// ln Pr(X = j) for X Poisson(omega) conditioned on X >= 1. j >= 1.
LogProb truncated_poisson_pmf(double omega, std::uint64_t j);

// Dominating constants for the early-rejection Bernoulli tests. These are
// bounds, not probabilities: the returned log value may exceed 0.
enum class RejectionContext { Mapping, Surjection13, SurjectionD };

struct RejectionBoundParams {
    double poisson_mean = 0;  // Mapping: mean of the remainder Poisson sum
    double omega = 0;         // Surjection contexts: truncated-Poisson rate
    double g = 0;             // Surjection contexts: pair-block floor (G13 or GD)
    double block_width = 0;   // SurjectionD: the even block width D
};

LogProb early_rejection_bound_q(RejectionContext ctx, const RejectionBoundParams& p);

// Regularized incomplete gamma: P(a,x) lower, Q(a,x) upper, P + Q = 1.
// Series / continued-fraction below a = 100, Gauss-Legendre quadrature
// above. Also the chi-square survival function: Q(df/2, x/2).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// ln(e^w - 1) and ln(1 - e^-w) for w > 0, cancellation-safe at both ends.
double log_expm1(double w);
double log1mexp(double w);

// ln j! minus its Stirling approximation 0.5 ln(2 pi) + (j+0.5) ln(j+1) - (j+1).
double stirling_tail(double j);

}  // namespace psamp
