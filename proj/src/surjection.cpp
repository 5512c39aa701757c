#include "psamp/surjection.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "psamp/errors.hpp"
#include "psamp/saddle.hpp"
#include "psamp/special.hpp"

namespace psamp {

namespace {

using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

double log_add_exp(double a, double b) {
    if (a < b) std::swap(a, b);
    if (std::isinf(b)) return a;
    return a + std::log1p(std::exp(b - a));
}

// One rejection round of the block sampler for 3k > n. Cells are iid
// zero-truncated Poisson(omega); sizes >= 3 are swept size by size and the
// sizes {1,2} form a single block whose split is forced by the target total,
// accepted against the constant bound q.
class Round13 {
public:
    Round13(u64 n, u64 k, const OmegaParams& params)
        : n_(n), k_(k), omega_(params.omega), g13_(*params.g13) {
        q_log_ = early_rejection_bound_q(
                     RejectionContext::Surjection13,
                     {.omega = omega_, .g = static_cast<double>(g13_), .block_width = 2.0})
                     .value;
        double log_tail1 = log1mexp(omega_);  // log Pr(Poiss >= 1)
        double log_tail3 = poisson_tail(omega_, 3, TailSide::AtLeast).value;
        p_big_ = std::min(1.0, std::exp(log_tail3 - log_tail1));
        split_one_ = 1.0 / (1.0 + omega_ / 2.0);
    }

    std::optional<Profile> round(RandomSource& rng, SamplerStats* stats) {
        u64 draws = 1;
        u64 big = binomial(rng, k_, p_big_);
        u64 m12 = k_ - big;
        std::optional<Profile> result;
        // Fewer than g13 cells of size <= 2 cannot reach total n; the forced
        // split below would go negative, so this reject loses no mass.
        if (m12 >= g13_) {
            Profile prof(2);
            i128 nhat = static_cast<i128>(n_);
            u64 rem = big;
            for (u64 i = 0; rem > 0; ++i) {
                u64 m = binomial(rng, rem, cond_right(i));
                ++draws;
                if (m > 0) {
                    prof.add(3 + i, m);
                    nhat -= static_cast<i128>(3 + i) * static_cast<i128>(m);
                }
                rem -= m;
            }
            i128 m1 = 2 * static_cast<i128>(m12) - nhat;
            i128 m2 = nhat - static_cast<i128>(m12);
            if (m1 >= 0 && m2 >= 0) {
                double p_log =
                    log_binomial_pmf(m12, split_one_, static_cast<u64>(m1)).value;
                if (p_log > q_log_ + 1e-9) {
                    throw InternalError("surjection profile: block bound violated");
                }
                if (stats) ++stats->bernoulli_draws;
                if (bernoulli_log(rng, p_log - q_log_)) {
                    if (m1 > 0) prof.add(1, static_cast<u64>(m1));
                    if (m2 > 0) prof.add(2, static_cast<u64>(m2));
                    result = std::move(prof);
                }
            }
        }
        if (stats) {
            stats->binomial_draws += draws;
            stats->max_window = std::max(stats->max_window, draws);
        }
        return result;
    }

private:
    double cond_right(u64 i) {
        while (right_.size() <= i) {
            right_.push_back(poisson_cond_right(omega_, 3 + right_.size()));
        }
        return right_[i];
    }

    u64 n_;
    u64 k_;
    double omega_;
    u64 g13_;
    double q_log_;
    double p_big_;
    double split_one_;
    std::vector<double> right_;
};

// One rejection round of the paired-block sampler for general n > k. Sizes
// are grouped into pairs {1,2},{3,4},...,{d-1,d}; one pair with enough cells
// is left unsplit and its split forced by the target total.
class RoundGeneral {
public:
    RoundGeneral(u64 n, u64 k, const OmegaParams& params)
        : n_(n), k_(k), omega_(params.omega), d_(params.d), gd_(params.gd) {
        q_log_ = early_rejection_bound_q(
                     RejectionContext::SurjectionD,
                     {.omega = omega_, .g = gd_, .block_width = static_cast<double>(d_)})
                     .value;
    }

    std::optional<Profile> round(RandomSource& rng, SamplerStats* stats) {
        u64 draws = 0;
        nonzero_.clear();
        u64 rem = k_;
        for (u64 i = 1; rem > 0 && i + 1 <= d_; i += 2) {
            u64 m = binomial(rng, rem, block_p((i - 1) / 2));
            ++draws;
            if (m > 0) nonzero_.emplace_back(i, m);
            rem -= m;
        }
        u64 singles = rem;

        // The forced split only admits a solution when its block holds at
        // least gd cells (pigeonhole over the d/2 pairs), so a round without
        // such a block can be dropped before any further draws.
        std::size_t chosen = nonzero_.size();
        double best = -1.0;
        for (std::size_t t = 0; t < nonzero_.size(); ++t) {
            auto [i, m] = nonzero_[t];
            if (static_cast<double>(m) < gd_) continue;
            // Among qualifying blocks prefer the largest split variance
            // factor; the bound q is tightest there.
            double x = omega_ / static_cast<double>(i + 1);
            double f = x / ((1.0 + x) * (1.0 + x));
            if (f > best) {
                best = f;
                chosen = t;
            }
        }
        std::optional<Profile> result;
        if (chosen < nonzero_.size()) {
            result = complete_round(rng, stats, singles, chosen, draws);
        }
        if (stats) {
            stats->binomial_draws += draws;
            stats->max_window = std::max(stats->max_window, draws);
        }
        return result;
    }

private:
    std::optional<Profile> complete_round(RandomSource& rng, SamplerStats* stats,
                                          u64 singles, std::size_t chosen,
                                          u64& draws) {
        Profile prof(static_cast<u64>(omega_) + 1);
        i128 nhat = static_cast<i128>(n_);
        u64 rem = singles;
        for (u64 idx = 0; rem > 0; ++idx) {
            u64 m = binomial(rng, rem, single_p(idx));
            ++draws;
            if (m > 0) {
                u64 j = d_ + 1 + idx;
                prof.add(j, m);
                nhat -= static_cast<i128>(j) * static_cast<i128>(m);
            }
            rem -= m;
        }
        for (std::size_t t = 0; t < nonzero_.size(); ++t) {
            if (t == chosen) continue;
            auto [i, m] = nonzero_[t];
            u64 low = binomial(rng, m, split_p(i));
            ++draws;
            u64 high = m - low;
            if (low > 0) prof.add(i, low);
            if (high > 0) prof.add(i + 1, high);
            nhat -= static_cast<i128>(i) * static_cast<i128>(low) +
                    static_cast<i128>(i + 1) * static_cast<i128>(high);
        }

        auto [j, khat] = nonzero_[chosen];
        i128 m_high = nhat - static_cast<i128>(j) * static_cast<i128>(khat);
        i128 m_low = static_cast<i128>(j + 1) * static_cast<i128>(khat) - nhat;
        if (m_low < 0 || m_high < 0) return std::nullopt;

        double p_log =
            log_binomial_pmf(khat, split_p(j), static_cast<u64>(m_low)).value;
        if (p_log > q_log_ + 1e-9) {
            throw InternalError("surjection profile: block bound violated");
        }
        if (stats) ++stats->bernoulli_draws;
        if (!bernoulli_log(rng, p_log - q_log_)) return std::nullopt;
        if (m_low > 0) prof.add(j, static_cast<u64>(m_low));
        if (m_high > 0) prof.add(j + 1, static_cast<u64>(m_high));
        return prof;
    }

    // Pr(X in {i, i+1} | X >= i) for block index t, i = 2t+1.
    double block_p(u64 t) {
        while (block_.size() <= t) {
            u64 i = 2 * block_.size() + 1;
            double log_tail = poisson_tail(omega_, i, TailSide::AtLeast).value;
            if (log_tail < -700.0) {
                block_.push_back(1.0);
            } else {
                double log_pair = log_add_exp(log_poisson_pmf(omega_, i).value,
                                              log_poisson_pmf(omega_, i + 1).value);
                block_.push_back(std::min(1.0, std::exp(log_pair - log_tail)));
            }
        }
        return block_[t];
    }

    // Pr(X = d+1+idx | X >= d+1+idx).
    double single_p(u64 idx) {
        while (single_.size() <= idx) {
            single_.push_back(poisson_cond_right(omega_, d_ + 1 + single_.size()));
        }
        return single_[idx];
    }

    // Pr(X = i | X in {i, i+1}).
    double split_p(u64 i) const { return 1.0 / (1.0 + omega_ / static_cast<double>(i + 1)); }

    u64 n_;
    u64 k_;
    double omega_;
    u64 d_;
    double gd_;
    double q_log_;
    std::vector<double> block_;
    std::vector<double> single_;
    std::vector<std::pair<u64, u64>> nonzero_;
};

Profile ones_profile(u64 k) {
    Profile p(1);
    p.add(1, k);
    return p;
}

template <typename Engine>
Profile run_rounds(Engine& engine, RandomSource& rng, const SurjectionOptions& options,
                   SamplerStats* stats) {
    for (u64 r = 0; r < options.round_budget; ++r) {
        if (stats) ++stats->rounds;
        auto result = engine.round(rng, stats);
        if (result) return std::move(*result);
    }
    throw InternalError("surjection profile: round budget exhausted");
}

Profile coupon_rounds(RandomSource& rng, u64 n, u64 k, const SurjectionOptions& options,
                      SamplerStats* stats) {
    for (u64 r = 0; r < options.round_budget; ++r) {
        if (stats) ++stats->rounds;
        SamplerStats sub;
        Profile p = mapping_profile(rng, n, k, options.mapping, stats ? &sub : nullptr);
        if (stats) stats->absorb_draws(sub);
        if (p.smallest_size() >= 1) return p;
    }
    throw InternalError("surjection profile: round budget exhausted");
}

}  // namespace

Profile surjection_profile(RandomSource& rng, u64 n, u64 k,
                           const SurjectionOptions& options, SamplerStats* stats) {
    if (k == 0) throw std::domain_error("surjection_profile: k must be positive");
    if (n < k) throw std::domain_error("surjection_profile: need n >= k");
    if (n == k) {
        // Unique profile regardless of path.
        if (stats) ++stats->rounds;
        return ones_profile(k);
    }

    SurjectionPath path = options.path;
    if (path == SurjectionPath::Auto) {
        double threshold = static_cast<double>(n) / std::log(static_cast<double>(n));
        path = static_cast<double>(k) <= threshold ? SurjectionPath::Coupon
                                                   : SurjectionPath::Boltzmann;
    }
    if (path == SurjectionPath::Coupon) {
        return coupon_rounds(rng, n, k, options, stats);
    }

    bool block13_valid = u128{k} * 3 > u128{n};
    if (path == SurjectionPath::Boltzmann) {
        path = block13_valid ? SurjectionPath::Boltzmann13 : SurjectionPath::BoltzmannGeneral;
    } else if (path == SurjectionPath::Boltzmann13 && !block13_valid) {
        throw std::domain_error("surjection_profile: size-1/2 block round requires 3k > n");
    }

    OmegaParams params = solve_omega(n, k);
    if (path == SurjectionPath::Boltzmann13) {
        Round13 engine(n, k, params);
        return run_rounds(engine, rng, options, stats);
    }
    RoundGeneral engine(n, k, params);
    return run_rounds(engine, rng, options, stats);
}

Profile surjection_profile_naive(RandomSource& rng, u64 n, u64 k, SamplerStats* stats) {
    if (k == 0) throw std::domain_error("surjection_profile_naive: k must be positive");
    if (n < k) throw std::domain_error("surjection_profile_naive: need n >= k");
    if (n == k) {
        // The tilt degenerates to 0 here and every cell is forced to 1.
        if (stats) ++stats->rounds;
        return ones_profile(k);
    }
    const double omega = solve_omega(n, k).omega;
    SizeVector sv;
    sv.sizes.resize(k);
    for (;;) {
        if (stats) ++stats->rounds;
        u128 sum = 0;
        for (u64 i = 0; i < k; ++i) {
            u64 x;
            do {
                x = poisson(rng, omega);
                if (stats) ++stats->poisson_draws;
            } while (x == 0);
            sv.sizes[i] = x;
            sum += x;
        }
        if (sum == n) return profile_from_size_vector(sv);
    }
}

}  // namespace psamp
