#include "psamp/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace psamp {

namespace {

constexpr double kLogSqrt2Pi = 0.9189385332046727;  // ln sqrt(2 pi)
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Below this log value a tail is numerically indistinguishable from zero and
// conditionals on it degenerate to 1.
constexpr double kTailLogFloor = -700.0;

// ---- Gauss-Legendre nodes for the large-a incomplete gamma -------------

struct GaussLegendre64 {
    std::array<double, 64> x{};  // nodes on (0, 1)
    std::array<double, 64> w{};

    GaussLegendre64() {
        constexpr int n = 64;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            // Newton iteration on P_n, starting from the Chebyshev guess.
            double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (z * p0 - p1) / (z * z - 1.0);
                double z1 = z;
                z = z1 - p0 / pp;
                if (std::fabs(z - z1) < 1e-15) break;
            }
            x[i] = 0.5 * (1.0 - z);
            x[n - 1 - i] = 0.5 * (1.0 + z);
            w[i] = w[n - 1 - i] = 1.0 / ((1.0 - z * z) * pp * pp);
        }
    }
};

const GaussLegendre64& gauss64() {
    static const GaussLegendre64 g;
    return g;
}

// P(a,x) by the ascending series; accurate for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < 2000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
    }
    double lp = -x + a * std::log(x) - std::lgamma(a);
    return sum * std::exp(lp);
}

// Q(a,x) by the Lentz continued fraction; accurate for x > a + 1.
double gamma_q_cf(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 2000; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// P or Q for a >= 100: the regularized density is integrated between x and a
// cutoff far enough past the relevant tail to leave only e^-50-scale
// truncation relative to the answer.
double gamma_pq_quad(double a, double x, bool want_p) {
    double a1 = a - 1.0;
    double lna1 = std::log(a1);
    double sqa1 = std::sqrt(a1);
    double xu;
    if (x > a1) {
        xu = std::max(a1 + 11.5 * sqa1, x + 6.0 * sqa1);
    } else {
        xu = std::max(0.0, std::min(a1 - 7.5 * sqa1, x - 5.0 * sqa1));
    }
    const auto& g = gauss64();
    double sum = 0.0;
    for (int i = 0; i < 64; ++i) {
        double t = x + (xu - x) * g.x[i];
        sum += g.w[i] * std::exp(-(t - a1) + a1 * (std::log(t) - lna1));
    }
    double ans = sum * (xu - x) * std::exp(a1 * (lna1 - 1.0) - std::lgamma(a));
    if (want_p) return x > a1 ? 1.0 - ans : -ans;
    return x > a1 ? ans : 1.0 + ans;
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

double stirling_tail(double j) {
    if (j < 0) throw std::domain_error("stirling_tail: j < 0");
    if (j <= 30.0) {
        return std::lgamma(j + 1.0) - (kLogSqrt2Pi + (j + 0.5) * std::log(j + 1.0) - (j + 1.0));
    }
    double z = j + 1.0;
    double z2 = z * z;
    return (1.0 / 12.0 - (1.0 / 360.0 - 1.0 / (1260.0 * z2)) / z2) / z;
}

LogProb log_poisson_pmf(double lambda, std::uint64_t j) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::domain_error("log_poisson_pmf: lambda must be positive and finite");
    }
    double dj = static_cast<double>(j);
    double delta = (dj + 1.0) - lambda;
    double ratio = (dj + 1.0) / lambda;
    // (j + 1/2) ln((j+1)/lambda), cancellation-grouped near ratio = 1.
    double mode_term;
    if (ratio > 0.5 && ratio < 2.0) {
        mode_term = (dj + 0.5) * std::log1p(delta / lambda);
    } else {
        mode_term = (dj + 0.5) * std::log(ratio);
    }
    return LogProb::from_log(delta - mode_term - 0.5 * std::log(2.0 * M_PI * lambda) -
                             stirling_tail(dj));
}

double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_p: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (a >= 100.0) return clamp01(gamma_pq_quad(a, x, true));
    if (x < a + 1.0) return clamp01(gamma_p_series(a, x));
    return clamp01(1.0 - gamma_q_cf(a, x));
}

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_q: need a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (a >= 100.0) return clamp01(gamma_pq_quad(a, x, false));
    if (x < a + 1.0) return clamp01(1.0 - gamma_p_series(a, x));
    return clamp01(gamma_q_cf(a, x));
}

LogProb poisson_tail(double lambda, std::uint64_t j, TailSide side) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::domain_error("poisson_tail: lambda must be positive and finite");
    }
    double dj = static_cast<double>(j);
    if (side == TailSide::AtLeast) {
        if (j == 0) return LogProb::one();
        // Pr(X >= j) = P(j, lambda), the regularized lower gamma.
        double p = gamma_p(dj, lambda);
        return p <= 0.0 ? LogProb::zero() : LogProb::from_log(std::log(p));
    }
    // Pr(X <= j) = Q(j+1, lambda), the regularized upper gamma.
    double q = gamma_q(dj + 1.0, lambda);
    return q <= 0.0 ? LogProb::zero() : LogProb::from_log(std::log(q));
}

double poisson_cond_right(double lambda, std::uint64_t j) {
    if (j == 0) {
        // conditioning on X >= 0 is vacuous
        return clamp01(std::exp(log_poisson_pmf(lambda, 0).value));
    }
    LogProb tail = poisson_tail(lambda, j, TailSide::AtLeast);
    if (tail.value < kTailLogFloor) return 1.0;
    return clamp01(std::exp(log_poisson_pmf(lambda, j).value - tail.value));
}

double poisson_cond_left(double lambda, std::uint64_t j) {
    if (j == 0) return 1.0;  // Pr(X = 0 | X <= 0)
    LogProb tail = poisson_tail(lambda, j, TailSide::AtMost);
    if (tail.value < kTailLogFloor) return 1.0;
    return clamp01(std::exp(log_poisson_pmf(lambda, j).value - tail.value));
}

LogProb log_binomial_pmf(std::uint64_t n, double v, std::uint64_t j) {
    if (!(v >= -1e-9 && v <= 1.0 + 1e-9)) {
        throw std::domain_error("log_binomial_pmf: v outside [0,1]");
    }
    if (j > n) throw std::domain_error("log_binomial_pmf: j > n");
    v = clamp01(v);
    double dn = static_cast<double>(n);
    double dj = static_cast<double>(j);
    if (v == 0.0) return j == 0 ? LogProb::one() : LogProb::zero();
    if (v == 1.0) return j == n ? LogProb::one() : LogProb::zero();
    if (j == 0) return LogProb::from_log(dn * std::log1p(-v));
    if (j == n) return LogProb::from_log(dn * std::log(v));

    double w = 1.0 - v;
    double dnj = dn - dj;
    // j ln(v(n+1)/(j+1)) with the log grouped when the ratio is near 1, so
    // the two halves cancel analytically instead of numerically.
    auto side = [](double count, double prob, double cellp1, double np1) {
        double t = prob * (np1 / cellp1);
        if (t > 0.5 && t < 2.0) {
            return count * std::log1p((prob * np1 - cellp1) / cellp1);
        }
        return count * (std::log(prob) + std::log(np1 / cellp1));
    };
    double np1 = dn + 1.0;
    double val = -kLogSqrt2Pi + 1.0 + stirling_tail(dn) - stirling_tail(dj) -
                 stirling_tail(dnj) +
                 0.5 * (std::log(np1) - std::log(dj + 1.0) - std::log(dnj + 1.0)) +
                 side(dj, v, dj + 1.0, np1) + side(dnj, w, dnj + 1.0, np1);
    return LogProb::from_log(val);
}

LogProb truncated_poisson_pmf(double omega, std::uint64_t j) {
    if (j == 0) throw std::domain_error("truncated_poisson_pmf: j >= 1 required");
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw std::domain_error("truncated_poisson_pmf: omega must be positive and finite");
    }
    return LogProb::from_log(log_poisson_pmf(omega, j).value - log1mexp(omega));
}

double log1mexp(double w) {
    if (!(w > 0.0)) throw std::domain_error("log1mexp: w must be positive");
    if (w <= 0.6931471805599453) return std::log(-std::expm1(-w));
    return std::log1p(-std::exp(-w));
}

double log_expm1(double w) {
    if (!(w > 0.0)) throw std::domain_error("log_expm1: w must be positive");
    return w + log1mexp(w);
}

LogProb early_rejection_bound_q(RejectionContext ctx, const RejectionBoundParams& p) {
    switch (ctx) {
        case RejectionContext::Mapping: {
            if (!(p.poisson_mean > 0.0)) {
                throw std::domain_error("bound_q(mapping): poisson_mean must be positive");
            }
            auto mode = static_cast<std::uint64_t>(std::floor(p.poisson_mean));
            return log_poisson_pmf(p.poisson_mean, mode);
        }
        case RejectionContext::Surjection13:
        case RejectionContext::SurjectionD: {
            double h = ctx == RejectionContext::Surjection13 ? 2.0 : p.block_width;
            if (!(p.g > 0.0)) throw std::domain_error("bound_q(surjection): G must be positive");
            if (!(p.omega > 0.0)) throw std::domain_error("bound_q(surjection): omega must be positive");
            if (!(h > 0.0)) throw std::domain_error("bound_q(surjection): block width must be positive");
            // e^{1/12} / sqrt(pi G u (1-u)^... ) with u = (omega/h)/(1+omega/h)^2
            double log_u = std::log(p.omega / h) - 2.0 * std::log1p(p.omega / h);
            return LogProb::from_log(1.0 / 12.0 -
                                     0.5 * (std::log(M_PI) + std::log(p.g) + log_u));
        }
    }
    throw std::logic_error("early_rejection_bound_q: unknown context");
}

}  // namespace psamp
