#pragma once

#include <cstdint>
#include <optional>

namespace psamp {

// Tilt parameter and derived block constants for sampling conditioned
// Poisson ensembles with k cells and total n.
//
// omega is the unique nonnegative root of
//     k * omega * e^omega / (e^omega - 1) = n,
// equivalently poisson_tilt_excess(omega) = (n - k) / k. It satisfies
//     n/k - 1 <= omega <= n/k   and   delta <= k*omega <= 2*delta
// with delta = n - k, and 0 <= 2*delta - k*omega <= k*omega^2/6.
struct OmegaParams {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t delta = 0;  // n - k
    double omega = 0.0;       // 0 exactly when n == k

    // Even horizon for block rounds: floor(2n/k) rounded up to even, >= 2.
    std::uint64_t d = 0;
    // ceil((3k - n) / 2), present only when 3k > n. Lower bound on the
    // number of cells of size 1 or 2 in any size vector with all sizes >= 1.
    std::optional<std::uint64_t> g13;
    // 2*((d+1)*k - n) / d^2, always positive. Lower bound on the share of
    // cells with size <= d, scaled by the block pairing.
    double gd = 0.0;
};

// omega / (1 - e^-omega) - 1, the mean of a Poisson(omega) conditioned
// variable minus one, rearranged for accuracy near zero. Increasing on
// [0, inf), value omega/2 + O(omega^2) near 0 and omega - 1 + o(1) at
// infinity.
double poisson_tilt_excess(double omega);

// Solves for omega and fills in the derived constants. Requires
// 1 <= k <= n; n == k yields omega == 0.
OmegaParams solve_omega(std::uint64_t n, std::uint64_t k);

}  // namespace psamp
