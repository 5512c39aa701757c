#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace psamp {

using SizeCount = std::pair<std::uint64_t, std::uint64_t>;

// Run-length summary of a size-vector: the multiset {(s, c)} meaning c of
// the k preimage classes have size s. Canonical form is sorted by size with
// positive counts; for a profile of total mass n with smallest size >= 1 the
// number of distinct sizes is at most sqrt(2n).
//
// Internally the counts live in a dense window centered on an anchor size
// (sweep-built profiles touch adjacent cells, so growth is O(1) amortized)
// plus a sorted overflow map for sizes far outside the window (spread-out
// content from the conditional-binomial base case at large n/k).
class Profile {
public:
    Profile() = default;
    explicit Profile(std::uint64_t anchor);

    void add(std::uint64_t size, std::uint64_t count);
    void merge(const Profile& other);

    // Canonical sparse form: ascending sizes, zero counts dropped.
    std::vector<SizeCount> pairs() const;

    bool empty() const;
    std::uint64_t pair_count() const;
    std::uint64_t smallest_size() const;  // throws std::logic_error if empty

    struct Mass {
        std::uint64_t n = 0;  // sum of size*count
        std::uint64_t k = 0;  // sum of counts
    };
    // Throws std::overflow_error if either total leaves the uint64 range.
    Mass total_mass() const;

    friend bool operator==(const Profile& a, const Profile& b) {
        return a.pairs() == b.pairs();
    }

private:
    bool anchored_ = false;
    std::uint64_t anchor_ = 0;
    std::vector<std::uint64_t> at_or_above_;  // counts at anchor_, anchor_+1, ...
    std::vector<std::uint64_t> below_;        // counts at anchor_-1, anchor_-2, ...
    std::map<std::uint64_t, std::uint64_t> far_;

    static constexpr std::uint64_t kGrowSlack = 256;
};

Profile profile_merge(const Profile& a, const Profile& b);

// One preimage-class size per class, order significant only as scaffolding
// for reconstruction (class t has sizes[t] elements mapped onto it).
struct SizeVector {
    std::vector<std::uint64_t> sizes;

    std::uint64_t k() const { return sizes.size(); }
    std::uint64_t n() const;  // checked sum, throws std::overflow_error
};

Profile profile_from_size_vector(const SizeVector& sv);

// A function [n] -> [k]: image[t] in [1, k] is the value of element t+1.
struct Surjection {
    std::vector<std::uint64_t> image;
    std::uint64_t k = 0;
};

// Checks the profile against claimed totals. Returns std::nullopt when valid,
// otherwise the name of the first violated invariant. require_positive
// rejects size-0 classes (surjection profiles).
std::optional<std::string> profile_validate(const Profile& p, std::uint64_t n,
                                            std::uint64_t k,
                                            bool require_positive);

// Counters accumulated by the samplers. rounds counts rejection attempts at
// the owning sampler's level; recursion_depth counts accepted
// early-rejection rounds (= recursive descents of the mapping sampler).
struct SamplerStats {
    std::uint64_t rounds = 0;
    std::uint64_t binomial_draws = 0;
    std::uint64_t poisson_draws = 0;
    std::uint64_t bernoulli_draws = 0;
    std::uint64_t recursion_depth = 0;
    std::uint64_t max_window = 0;

    // Sums counters, maxes max_window. Used when one sampler absorbs the
    // work of a sub-sampler.
    void absorb(const SamplerStats& s);
    // Like absorb but leaves rounds/recursion_depth alone: the sub-sampler's
    // attempts are not rounds of the absorbing sampler.
    void absorb_draws(const SamplerStats& s);
};

// On-disk forms. JSON: {"n":N,"k":K,"pairs":[[size,count],...]}.
// CSV: header "size,count" then one pair per line.
std::string profile_to_json(const Profile& p);
std::string profile_to_csv(const Profile& p);

struct ParsedProfile {
    Profile profile;
    std::uint64_t n = 0;
    std::uint64_t k = 0;
};
// Throws std::invalid_argument on malformed input or totals that do not
// match the pairs.
ParsedProfile profile_from_json(const std::string& text);

}  // namespace psamp
