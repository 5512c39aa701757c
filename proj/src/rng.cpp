#include "psamp/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "psamp/special.hpp"

namespace psamp {

namespace {

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// ln( pmf(k) / pmf(m) ) for Binomial(n, p), r = p/(1-p), all arguments as
// integer-valued doubles. Grouped so every log argument is an O(1) ratio:
// raw lgamma differences lose ~30 absolute at n ~ 1e15 and would corrupt the
// rejection test, this form keeps the error near 1e-8 even at n = 2^53.
double binom_lpmf_ratio(double n, double r, double k, double m) {
    return (m + 0.5) * std::log((m + 1.0) / (r * (n - m + 1.0))) +
           (n + 1.0) * std::log1p((k - m) / (n - k + 1.0)) +
           (k + 0.5) * std::log(r * (n - k + 1.0) / (k + 1.0)) +
           stirling_tail(m) + stirling_tail(n - m) -
           stirling_tail(k) - stirling_tail(n - k);
}

// Inversion by pmf recurrence; p <= 1/2, n p < 10. The x guard restarts on
// the ~1e-16 residue where rounding keeps u above the exhausted cdf.
std::uint64_t binomial_inversion(RandomSource& rng, std::uint64_t n, double p) {
    const double dn = static_cast<double>(n);
    const double s = p / (1.0 - p);
    const double a = (dn + 1.0) * s;
    const double r0 = std::exp(dn * std::log1p(-p));
    for (;;) {
        double u = rng.uniform01();
        double r = r0;
        std::uint64_t x = 0;
        bool exhausted = false;
        while (u > r) {
            u -= r;
            ++x;
            if (x > n || x > 150) {
                exhausted = true;
                break;
            }
            r *= a / static_cast<double>(x) - s;
        }
        if (!exhausted) return x;
    }
}

// Hormann's BTRS transformed rejection; p <= 1/2, n p >= 10, n <= 2^53.
// Candidates come from a transformed uniform; acceptance compares against
// the exact pmf ratio, so the constants only affect speed, not the law.
std::uint64_t binomial_btrs(RandomSource& rng, std::uint64_t n, double p) {
    const double dn = static_cast<double>(n);
    const double r = p / (1.0 - p);
    const double stddev = std::sqrt(dn * p * (1.0 - p));
    const double b = 1.15 + 2.53 * stddev;
    const double a = -0.0873 + 0.0248 * b + 0.01 * p;
    const double c = dn * p + 0.5;
    const double vr = 0.92 - 4.2 / b;
    const double alpha = (2.83 + 5.1 / b) * stddev;
    const double m = std::floor((dn + 1.0) * p);
    for (;;) {
        double u = rng.uniform01() - 0.5;
        double v = rng.uniform01();
        double us = 0.5 - std::fabs(u);
        double kd = std::floor((2.0 * a / us + b) * u + c);
        if (kd < 0.0 || kd > dn) continue;
        if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(kd);
        v = std::log(v * alpha / (a / (us * us) + b));
        if (v <= binom_lpmf_ratio(dn, r, kd, m)) return static_cast<std::uint64_t>(kd);
    }
}

// Multiplication-method inversion, lambda < 10.
std::uint64_t poisson_inversion(RandomSource& rng, double lambda) {
    const double p0 = std::exp(-lambda);
    for (;;) {
        double u = rng.uniform01();
        double p = p0;
        std::uint64_t x = 0;
        bool exhausted = false;
        while (u > p) {
            u -= p;
            ++x;
            if (x > 200) {
                exhausted = true;
                break;
            }
            p *= lambda / static_cast<double>(x);
        }
        if (!exhausted) return x;
    }
}

// Hormann's PTRD transformed rejection, lambda >= 10 (constants as
// published). Acceptance uses the grouped Poisson log-pmf.
std::uint64_t poisson_ptrd(RandomSource& rng, double lambda) {
    const double smu = std::sqrt(lambda);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    const double half_log_lambda = 0.5 * std::log(lambda);
    for (;;) {
        double u;
        double v = rng.uniform01();
        if (v <= 0.86 * vr) {
            u = v / vr - 0.43;
            return static_cast<std::uint64_t>(
                std::floor((2.0 * a / (0.5 - std::fabs(u)) + b) * u + lambda + 0.445));
        }
        if (v >= vr) {
            u = rng.uniform01() - 0.5;
        } else {
            u = v / vr - 0.93;
            u = (u < 0.0 ? -0.5 : 0.5) - u;
            v = rng.uniform01() * vr;
        }
        double us = 0.5 - std::fabs(u);
        if (us < 0.013 && v > us) continue;
        double kd = std::floor((2.0 * a / us + b) * u + lambda + 0.445);
        v = v * inv_alpha / (a / (us * us) + b);
        if (kd >= 10.0) {
            if (std::log(v * smu) <=
                log_poisson_pmf(lambda, static_cast<std::uint64_t>(kd)).value +
                    half_log_lambda) {
                return static_cast<std::uint64_t>(kd);
            }
        } else if (kd >= 0.0) {
            if (std::log(v) <=
                log_poisson_pmf(lambda, static_cast<std::uint64_t>(kd)).value) {
                return static_cast<std::uint64_t>(kd);
            }
        }
    }
}

}  // namespace

std::uint64_t RandomSource::below(std::uint64_t bound) {
    if (bound == 0) throw std::domain_error("RandomSource::below: bound must be positive");
    if (bound == 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll(bound - 1);
    for (;;) {
        std::uint64_t x = engine_() & mask;
        if (x < bound) return x;
    }
}

bool bernoulli(RandomSource& rng, double p) {
    if (!(p >= -1e-9 && p <= 1.0 + 1e-9)) {
        throw std::domain_error("bernoulli: p outside [0,1]");
    }
    p = clamp01(p);
    if (p == 0.0) return false;
    if (p == 1.0) return true;
    return rng.uniform01() < p;
}

bool bernoulli_log(RandomSource& rng, double log_p) {
    if (log_p >= 0.0) return true;
    if (std::isinf(log_p)) return false;
    return bernoulli(rng, std::exp(log_p));
}

std::uint64_t binomial(RandomSource& rng, std::uint64_t n, double p) {
    if (!(p >= -1e-9 && p <= 1.0 + 1e-9)) {
        throw std::domain_error("binomial: p outside [0,1]");
    }
    p = clamp01(p);
    if (n == 0 || p == 0.0) return 0;
    if (p == 1.0) return n;
    if (p > 0.5) return n - binomial(rng, n, 1.0 - p);
    constexpr std::uint64_t kExactDoubleMax = 1ull << 53;
    if (n > kExactDoubleMax) {
        // Bin(n,p) = Bin(n1,p) + Bin(n-n1,p): keeps results integer-exact
        // where doubles could no longer represent n.
        std::uint64_t n1 = n / 2;
        return binomial(rng, n1, p) + binomial(rng, n - n1, p);
    }
    if (static_cast<double>(n) * p < 10.0) return binomial_inversion(rng, n, p);
    return binomial_btrs(rng, n, p);
}

std::uint64_t poisson(RandomSource& rng, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::domain_error("poisson: lambda must be positive and finite");
    }
    constexpr double kSplitAbove = 0x1.0p52;
    if (lambda > kSplitAbove) {
        double half = lambda / 2.0;
        return poisson(rng, half) + poisson(rng, lambda - half);
    }
    if (lambda < 10.0) return poisson_inversion(rng, lambda);
    return poisson_ptrd(rng, lambda);
}

}  // namespace psamp
