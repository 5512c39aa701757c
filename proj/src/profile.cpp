#include "psamp/profile.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace psamp {

Profile::Profile(std::uint64_t anchor) : anchored_(true), anchor_(anchor) {}

void Profile::add(std::uint64_t size, std::uint64_t count) {
    if (count == 0) return;
    if (!anchored_) {
        anchored_ = true;
        anchor_ = size;
    }
    if (size >= anchor_) {
        std::uint64_t off = size - anchor_;
        if (off < at_or_above_.size()) {
            at_or_above_[off] += count;
            return;
        }
        if (off <= at_or_above_.size() + kGrowSlack) {
            at_or_above_.resize(off + 1, 0);
            at_or_above_[off] += count;
            return;
        }
    } else {
        std::uint64_t off = anchor_ - size;  // 1-based index into below_
        if (off <= below_.size()) {
            below_[off - 1] += count;
            return;
        }
        if (off <= below_.size() + kGrowSlack) {
            below_.resize(off, 0);
            below_[off - 1] += count;
            return;
        }
    }
    far_[size] += count;
}

void Profile::merge(const Profile& other) {
    for (const auto& [size, count] : other.pairs()) add(size, count);
}

Profile profile_merge(const Profile& a, const Profile& b) {
    Profile out = a;
    out.merge(b);
    return out;
}

std::vector<SizeCount> Profile::pairs() const {
    std::vector<SizeCount> dense;
    dense.reserve(at_or_above_.size() + below_.size());
    for (std::size_t i = below_.size(); i-- > 0;) {
        if (below_[i] != 0) dense.emplace_back(anchor_ - i - 1, below_[i]);
    }
    for (std::size_t i = 0; i < at_or_above_.size(); ++i) {
        if (at_or_above_[i] != 0) dense.emplace_back(anchor_ + i, at_or_above_[i]);
    }
    if (far_.empty()) return dense;

    std::vector<SizeCount> out;
    out.reserve(dense.size() + far_.size());
    auto d = dense.begin();
    auto f = far_.begin();
    while (d != dense.end() || f != far_.end()) {
        if (f == far_.end() || (d != dense.end() && d->first < f->first)) {
            out.push_back(*d++);
        } else if (d == dense.end() || f->first < d->first) {
            out.emplace_back(f->first, f->second);
            ++f;
        } else {  // same size in both stores
            out.emplace_back(d->first, d->second + f->second);
            ++d;
            ++f;
        }
    }
    return out;
}

bool Profile::empty() const {
    for (auto c : at_or_above_)
        if (c) return false;
    for (auto c : below_)
        if (c) return false;
    return far_.empty();
}

std::uint64_t Profile::pair_count() const { return pairs().size(); }

std::uint64_t Profile::smallest_size() const {
    auto ps = pairs();
    if (ps.empty()) throw std::logic_error("smallest_size of empty profile");
    return ps.front().first;
}

Profile::Mass Profile::total_mass() const {
    unsigned __int128 n = 0;
    unsigned __int128 k = 0;
    constexpr std::uint64_t u64max = ~std::uint64_t{0};
    for (const auto& [size, count] : pairs()) {
        n += static_cast<unsigned __int128>(size) * count;
        k += count;
        if (n > u64max || k > u64max) throw std::overflow_error("profile mass exceeds uint64");
    }
    return {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)};
}

std::uint64_t SizeVector::n() const {
    unsigned __int128 total = 0;
    constexpr std::uint64_t u64max = ~std::uint64_t{0};
    for (auto s : sizes) {
        total += s;
        if (total > u64max) throw std::overflow_error("size-vector total exceeds uint64");
    }
    return static_cast<std::uint64_t>(total);
}

Profile profile_from_size_vector(const SizeVector& sv) {
    std::vector<std::uint64_t> sorted = sv.sizes;
    std::sort(sorted.begin(), sorted.end());
    Profile p;
    if (!sorted.empty()) p = Profile(sorted[sorted.size() / 2]);  // anchor near the median
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        p.add(sorted[i], j - i);
        i = j;
    }
    return p;
}

std::optional<std::string> profile_validate(const Profile& p, std::uint64_t n,
                                            std::uint64_t k,
                                            bool require_positive) {
    auto ps = p.pairs();
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
        if (ps[i].first >= ps[i + 1].first) return "sizes strictly increasing";
    }
    for (const auto& [size, count] : ps) {
        if (count == 0) return "counts positive";
        if (require_positive && size == 0) return "sizes positive";
    }
    Profile::Mass m;
    try {
        m = p.total_mass();
    } catch (const std::overflow_error&) {
        return "mass within uint64 range";
    }
    if (m.k != k) return "counts sum to k";
    if (m.n != n) return "weighted sum equals n";
    return std::nullopt;
}

void SamplerStats::absorb(const SamplerStats& s) {
    absorb_draws(s);
    rounds += s.rounds;
    recursion_depth += s.recursion_depth;
}

void SamplerStats::absorb_draws(const SamplerStats& s) {
    binomial_draws += s.binomial_draws;
    poisson_draws += s.poisson_draws;
    bernoulli_draws += s.bernoulli_draws;
    max_window = std::max(max_window, s.max_window);
}

std::string profile_to_json(const Profile& p) {
    auto m = p.total_mass();
    nlohmann::json j;
    j["n"] = m.n;
    j["k"] = m.k;
    j["pairs"] = nlohmann::json::array();
    for (const auto& [size, count] : p.pairs()) {
        j["pairs"].push_back({size, count});
    }
    return j.dump();
}

std::string profile_to_csv(const Profile& p) {
    std::ostringstream out;
    out << "size,count\n";
    for (const auto& [size, count] : p.pairs()) out << size << ',' << count << '\n';
    return out.str();
}

ParsedProfile profile_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("profile JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("k") || !j.contains("pairs") ||
        !j["pairs"].is_array()) {
        throw std::invalid_argument("profile JSON: expected {\"n\",\"k\",\"pairs\"}");
    }
    ParsedProfile out;
    try {
        out.n = j["n"].get<std::uint64_t>();
        out.k = j["k"].get<std::uint64_t>();
        std::uint64_t prev_size = 0;
        bool first = true;
        for (const auto& e : j["pairs"]) {
            if (!e.is_array() || e.size() != 2) {
                throw std::invalid_argument("profile JSON: pair entries are [size,count]");
            }
            auto size = e[0].get<std::uint64_t>();
            auto count = e[1].get<std::uint64_t>();
            if (!first && size <= prev_size) {
                throw std::invalid_argument("profile JSON: sizes must be strictly increasing");
            }
            if (count == 0) throw std::invalid_argument("profile JSON: counts must be positive");
            out.profile.add(size, count);
            prev_size = size;
            first = false;
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("profile JSON: ") + e.what());
    }
    Profile::Mass m;
    try {
        m = out.profile.total_mass();
    } catch (const std::overflow_error&) {
        throw std::invalid_argument("profile JSON: mass exceeds uint64");
    }
    if (m.n != out.n || m.k != out.k) {
        throw std::invalid_argument("profile JSON: pairs do not match claimed n,k");
    }
    return out;
}

}  // namespace psamp
