#include "psamp/reconstruct.hpp"

#include <bit>
#include <stdexcept>

#include "psamp/errors.hpp"

namespace psamp {

namespace {

void fisher_yates(RandomSource& rng, std::vector<std::uint64_t>& v) {
    for (std::uint64_t i = v.size(); i > 1; --i) {
        std::uint64_t j = rng.below(i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace

SizeVector size_vector_from_profile(RandomSource& rng, const Profile& profile,
                                    const ReconstructOptions& options) {
    std::uint64_t k = profile.total_mass().k;
    if (k > options.max_elements) {
        throw ResourceError("size vector larger than the configured element cap");
    }
    SizeVector sv;
    sv.sizes.reserve(k);
    for (const auto& [size, count] : profile.pairs()) {
        sv.sizes.insert(sv.sizes.end(), count, size);
    }
    fisher_yates(rng, sv.sizes);
    return sv;
}

Surjection surjection_from_size_vector(RandomSource& rng, const SizeVector& sv,
                                       const ReconstructOptions& options) {
    std::uint64_t n = sv.n();
    std::uint64_t k = sv.k();
    if (n > options.max_elements) {
        throw ResourceError("image larger than the configured element cap");
    }

    Surjection out;
    out.k = k;
    out.image.resize(n);

    if (options.method == ExpandMethod::Shuffle) {
        std::vector<std::uint64_t>& image = out.image;
        image.clear();
        for (std::uint64_t t = 0; t < k; ++t) {
            image.insert(image.end(), sv.sizes[t], t + 1);
        }
        fisher_yates(rng, image);
        return out;
    }

    // Weighted tree: leaves hold the remaining class sizes; each element
    // descends by exact integer weights, so every arrangement of the size
    // vector is equally likely.
    std::uint64_t cap = k == 0 ? 1 : std::bit_ceil(k);
    std::vector<std::uint64_t> weight(2 * cap, 0);
    for (std::uint64_t t = 0; t < k; ++t) weight[cap + t] = sv.sizes[t];
    for (std::uint64_t node = cap - 1; node >= 1; --node) {
        weight[node] = weight[2 * node] + weight[2 * node + 1];
    }
    for (std::uint64_t elem = 0; elem < n; ++elem) {
        std::uint64_t node = 1;
        while (node < cap) {
            std::uint64_t left = weight[2 * node];
            --weight[node];
            node = 2 * node + (rng.below(weight[2 * node] + weight[2 * node + 1]) < left
                                   ? 0
                                   : 1);
        }
        --weight[node];
        out.image[elem] = node - cap + 1;
    }
    return out;
}

Surjection surjection_from_profile(RandomSource& rng, const Profile& profile,
                                   const ReconstructOptions& options) {
    SizeVector sv = size_vector_from_profile(rng, profile, options);
    return surjection_from_size_vector(rng, sv, options);
}

}  // namespace psamp
