#include "psamp/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "psamp/errors.hpp"
#include "psamp/special.hpp"

namespace psamp {

PoissonProfiler::PoissonProfiler(double lambda) : lambda_(lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::domain_error("PoissonProfiler: lambda must be positive and finite");
    }
    mode_ = static_cast<std::uint64_t>(lambda);
    p_top_ = poisson_tail(lambda, mode_, TailSide::AtLeast).prob();
}

double PoissonProfiler::right_at(std::uint64_t i) {
    while (right_.size() <= i) {
        right_.push_back(poisson_cond_right(lambda_, mode_ + right_.size()));
    }
    return right_[i];
}

double PoissonProfiler::left_at(std::uint64_t i) {
    while (left_.size() <= i) {
        left_.push_back(poisson_cond_left(lambda_, mode_ - 1 - left_.size()));
    }
    return left_[i];
}

Profile PoissonProfiler::sample(RandomSource& rng, std::uint64_t k,
                                SamplerStats* stats) {
    if (k == 0) throw std::domain_error("PoissonProfiler::sample: k must be positive");
    Profile prof(mode_);
    std::uint64_t draws = 1;
    std::uint64_t top = binomial(rng, k, p_top_);

    std::uint64_t rem = top;
    for (std::uint64_t i = 0; rem > 0; ++i) {
        std::uint64_t m = binomial(rng, rem, right_at(i));
        ++draws;
        if (m > 0) prof.add(mode_ + i, m);
        rem -= m;
    }
    // Left of the mode there are at most mode_ sizes and the conditional at
    // size 0 is exactly 1, so this loop stops before the size underflows.
    rem = k - top;
    for (std::uint64_t i = 0; rem > 0; ++i) {
        std::uint64_t m = binomial(rng, rem, left_at(i));
        ++draws;
        if (m > 0) prof.add(mode_ - 1 - i, m);
        rem -= m;
    }

    if (stats) {
        stats->binomial_draws += draws;
        stats->max_window = std::max(stats->max_window, draws);
    }
    return prof;
}

Profile poisson_profile(RandomSource& rng, std::uint64_t k, double lambda,
                        SamplerStats* stats) {
    PoissonProfiler profiler(lambda);
    return profiler.sample(rng, k, stats);
}

Profile small_k_profile(RandomSource& rng, std::uint64_t n, std::uint64_t k,
                        SamplerStats* stats) {
    if (k == 0) throw std::domain_error("small_k_profile: k must be positive");
    SizeVector sv;
    sv.sizes.resize(k);
    std::uint64_t rem = n;
    for (std::uint64_t i = 0; i + 1 < k; ++i) {
        std::uint64_t x = binomial(rng, rem, 1.0 / static_cast<double>(k - i));
        sv.sizes[i] = x;
        rem -= x;
    }
    sv.sizes[k - 1] = rem;
    if (stats) stats->binomial_draws += k - 1;
    return profile_from_size_vector(sv);
}

Profile mapping_profile_naive(RandomSource& rng, std::uint64_t n, std::uint64_t k,
                              SamplerStats* stats) {
    if (k == 0) throw std::domain_error("mapping_profile_naive: k must be positive");
    if (n == 0) {
        if (stats) ++stats->rounds;
        Profile p(0);
        p.add(0, k);
        return p;
    }
    const double lambda = static_cast<double>(n) / static_cast<double>(k);
    SizeVector sv;
    sv.sizes.resize(k);
    for (;;) {
        if (stats) {
            ++stats->rounds;
            stats->poisson_draws += k;
        }
        unsigned __int128 sum = 0;
        for (std::uint64_t i = 0; i < k; ++i) {
            sv.sizes[i] = poisson(rng, lambda);
            sum += sv.sizes[i];
        }
        if (sum == n) return profile_from_size_vector(sv);
    }
}

std::uint64_t integer_cbrt(std::uint64_t n) {
    if (n == 0) return 0;
    using u128 = unsigned __int128;
    std::uint64_t c = static_cast<std::uint64_t>(std::cbrt(static_cast<double>(n)));
    while (c > 0 && u128{c} * c * c > n) --c;
    while (u128{c + 1} * (c + 1) * (c + 1) <= n) ++c;
    return c;
}

Profile mapping_profile(RandomSource& rng, std::uint64_t n, std::uint64_t k,
                        const MappingOptions& options, SamplerStats* stats) {
    if (k == 0) throw std::domain_error("mapping_profile: k must be positive");
    Profile acc;
    std::uint64_t cur_n = n;
    std::uint64_t cur_k = k;
    for (;;) {
        if (cur_n == 0) {
            Profile zeros(0);
            zeros.add(0, cur_k);
            acc.merge(zeros);
            return acc;
        }
        if (cur_k <= std::max(options.base_floor, integer_cbrt(cur_n))) {
            acc.merge(small_k_profile(rng, cur_n, cur_k, stats));
            return acc;
        }

        const double omega = static_cast<double>(cur_n) / static_cast<double>(cur_k);
        const std::uint64_t k_left = cur_k / 2;
        const std::uint64_t k_right = cur_k - k_left;
        const double mean_right = omega * static_cast<double>(k_right);
        const double q_log =
            early_rejection_bound_q(RejectionContext::Mapping,
                                    {.poisson_mean = mean_right})
                .value;
        PoissonProfiler profiler(omega);

        for (;;) {
            if (stats) ++stats->rounds;
            Profile left = profiler.sample(rng, k_left, stats);
            std::uint64_t s = left.total_mass().n;
            if (s > cur_n) continue;
            double p_log = log_poisson_pmf(mean_right, cur_n - s).value;
            if (p_log > q_log + 1e-9) {
                throw InternalError("mapping profile: acceptance bound violated");
            }
            if (stats) ++stats->bernoulli_draws;
            if (bernoulli_log(rng, p_log - q_log)) {
                acc.merge(left);
                cur_n -= s;
                cur_k = k_right;
                if (stats) ++stats->recursion_depth;
                break;
            }
        }
    }
}

}  // namespace psamp
