#pragma once

#include <cstdint>

#include "psamp/profile.hpp"
#include "psamp/rng.hpp"

namespace psamp {

enum class ExpandMethod {
    // Write each class label into a length-n array by multiplicity and
    // shuffle it. O(n) time, O(n) words.
    Shuffle,
    // Weighted binary tree over the k classes: each element walks down by
    // exact integer proportions and the path weights are decremented.
    // O(n log k) time, O(k) words beyond the image.
    WeightedTree,
};

struct ReconstructOptions {
    ExpandMethod method = ExpandMethod::WeightedTree;
    // Materializing a size vector or image larger than this throws
    // ResourceError; profiles themselves stay tiny far beyond it.
    std::uint64_t max_elements = std::uint64_t{1} << 31;
};

// Uniform size vector among the k!/prod(c_i!) arrangements of the profile's
// class sizes.
SizeVector size_vector_from_profile(RandomSource& rng, const Profile& profile,
                                    const ReconstructOptions& options = {});

// Uniform function [n] -> [k] among those whose class sizes match the size
// vector (class t receives sizes[t] elements). Surjective exactly when every
// size is positive.
Surjection surjection_from_size_vector(RandomSource& rng, const SizeVector& sv,
                                       const ReconstructOptions& options = {});

// Uniform function with the given profile; composition of the two steps
// above.
Surjection surjection_from_profile(RandomSource& rng, const Profile& profile,
                                   const ReconstructOptions& options = {});

}  // namespace psamp
