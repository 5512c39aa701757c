#include "psamp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "psamp/saddle.hpp"
#include "psamp/special.hpp"

namespace psamp::oracle {

BigInt factorial(std::uint64_t n) {
    BigInt r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt stirling2(std::uint64_t n, std::uint64_t k) {
    if (n > 500) throw std::domain_error("stirling2: n > 500");
    if (k > n) return 0;
    if (n == 0) return 1;  // S(0,0)
    if (k == 0) return 0;
    // Callers tend to sweep n upward (acceptance-probability scans hit every
    // (n, k) cell), so keep the most recent full row and extend it in place.
    static std::mutex cache_mutex;
    static std::vector<BigInt> cached_row{1};  // S(cached_n, j) for j = 0..cached_n
    static std::uint64_t cached_n = 0;
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (n >= cached_n) {
        cached_row.resize(n + 1, 0);
        for (std::uint64_t i = cached_n + 1; i <= n; ++i) {
            for (std::uint64_t j = i; j >= 1; --j) {
                cached_row[j] = j * cached_row[j] + cached_row[j - 1];
            }
            cached_row[0] = 0;
        }
        cached_n = n;
        return cached_row[k];
    }
    // Below the cached row the recurrence restarts; rolling row up to k only.
    std::vector<BigInt> row(k + 1, 0);
    row[0] = 1;  // S(0,0)
    for (std::uint64_t i = 1; i <= n; ++i) {
        for (std::uint64_t j = std::min(i, k); j >= 1; --j) {
            row[j] = j * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    return row[k];
}

double log_big(const BigInt& v) {
    if (v <= 0) throw std::domain_error("log_big: nonpositive");
    unsigned bits = boost::multiprecision::msb(v);
    if (bits <= 900) return std::log(v.convert_to<double>());
    unsigned shift = bits - 52;
    BigInt top = v >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

namespace {

// Partitions of `remaining` into at most `slots` parts, each in [1, max_part],
// built in non-increasing order.
template <typename Fn>
void enumerate_partitions(std::uint64_t remaining, std::uint64_t max_part,
                          std::uint64_t slots, std::vector<std::uint64_t>& parts,
                          Fn&& emit) {
    if (remaining == 0) {
        emit(parts);
        return;
    }
    if (slots == 0) return;
    std::uint64_t hi = std::min(remaining, max_part);
    for (std::uint64_t p = hi; p >= 1; --p) {
        if (remaining - p > p * (slots - 1)) continue;
        parts.push_back(p);
        enumerate_partitions(remaining - p, p, slots - 1, parts, emit);
        parts.pop_back();
    }
}

std::vector<SizeCount> profile_of_parts(const std::vector<std::uint64_t>& parts,
                                        std::uint64_t zero_classes) {
    std::vector<SizeCount> out;
    if (zero_classes > 0) out.emplace_back(0, zero_classes);
    // parts arrive non-increasing; walk from the back for ascending sizes.
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        if (!out.empty() && out.back().first == *it) {
            ++out.back().second;
        } else {
            out.emplace_back(*it, 1);
        }
    }
    return out;
}

}  // namespace

std::map<std::vector<SizeCount>, BigRat> exact_profile_distribution(
    std::uint64_t n, std::uint64_t k, Ensemble ensemble) {
    if (n > 64) throw std::domain_error("exact_profile_distribution: n > 64");
    if (k == 0) throw std::domain_error("exact_profile_distribution: k == 0");
    if (ensemble == Ensemble::Surjection && k > n) {
        throw std::domain_error("exact_profile_distribution: surjection needs k <= n");
    }

    BigInt denom = ensemble == Ensemble::Mapping
                       ? boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(n))
                       : factorial(k) * stirling2(n, k);
    BigInt kfact = factorial(k);
    BigInt nfact = factorial(n);

    std::map<std::vector<SizeCount>, BigRat> law;
    std::vector<std::uint64_t> parts;
    std::uint64_t max_positive = std::min(n, k);
    enumerate_partitions(
        n, n, max_positive, parts, [&](const std::vector<std::uint64_t>& ps) {
            std::uint64_t used = ps.size();
            if (ensemble == Ensemble::Surjection && used != k) return;
            auto key = profile_of_parts(ps, k - used);
            // Size vectors with this profile: k! / prod c_i!; surjections per
            // size vector: n! / prod (s_i!)^(c_i).
            BigInt ways = kfact * nfact;
            for (const auto& [size, count] : key) {
                ways /= factorial(count);
                BigInt sf = factorial(size);
                for (std::uint64_t c = 0; c < count; ++c) ways /= sf;
            }
            law.emplace(std::move(key), BigRat(ways, denom));
        });
    return law;
}

double exact_acceptance_probability(std::uint64_t n, std::uint64_t k) {
    if (k == 0 || n <= k) {
        throw std::domain_error("exact_acceptance_probability: need n > k >= 1");
    }
    if (n > 3000) throw std::domain_error("exact_acceptance_probability: n > 3000");
    double omega = solve_omega(n, k).omega;
    double log_a = log_big(stirling2(n, k)) + std::lgamma(static_cast<double>(k) + 1.0) +
                   static_cast<double>(n) * std::log(omega) -
                   std::lgamma(static_cast<double>(n) + 1.0) -
                   static_cast<double>(k) * log_expm1(omega);
    return std::exp(log_a);
}

double chi_square_pvalue(const std::vector<std::uint64_t>& observed,
                         const std::vector<double>& expected) {
    if (observed.size() != expected.size()) {
        throw std::invalid_argument("chi_square_pvalue: size mismatch");
    }
    double total_o = 0.0, total_e = 0.0;
    for (auto o : observed) total_o += static_cast<double>(o);
    for (auto e : expected) {
        if (e < 0.0) throw std::invalid_argument("chi_square_pvalue: negative expected");
        total_e += e;
    }
    if (std::fabs(total_o - total_e) > 1e-6 * std::max(1.0, total_e)) {
        throw std::invalid_argument("chi_square_pvalue: totals differ");
    }

    constexpr double kMinExpected = 5.0;
    std::vector<std::pair<double, double>> cells;  // (observed, expected)
    double pooled_o = 0.0, pooled_e = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] < kMinExpected) {
            pooled_o += static_cast<double>(observed[i]);
            pooled_e += expected[i];
        } else {
            cells.emplace_back(static_cast<double>(observed[i]), expected[i]);
        }
    }
    if (pooled_e >= kMinExpected) {
        cells.emplace_back(pooled_o, pooled_e);
    } else if (pooled_e > 0.0 && !cells.empty()) {
        auto smallest = std::min_element(
            cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
        smallest->first += pooled_o;
        smallest->second += pooled_e;
    }
    if (cells.size() < 2) return 1.0;

    double stat = 0.0;
    for (const auto& [o, e] : cells) stat += (o - e) * (o - e) / e;
    boost::math::chi_squared dist(static_cast<double>(cells.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

double tv_distance(const std::vector<std::uint64_t>& observed,
                   const std::vector<double>& expected) {
    if (observed.size() != expected.size()) {
        throw std::invalid_argument("tv_distance: size mismatch");
    }
    double total = 0.0;
    for (auto o : observed) total += static_cast<double>(o);
    if (total <= 0.0) throw std::invalid_argument("tv_distance: no observations");
    double tv = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        tv += std::fabs(static_cast<double>(observed[i]) / total - expected[i]);
    }
    return tv / 2.0;
}

}  // namespace psamp::oracle
