#include "psamp/saddle.hpp"

#include <cmath>
#include <stdexcept>

namespace psamp {

double poisson_tilt_excess(double omega) {
    if (omega <= 0.0) return 0.0;
    if (omega <= 0.01) {
        // omega + expm1(-omega) cancels to omega^2/2 and loses digits, so
        // expand omega/(1 - e^-omega) - 1 directly (error < 1e-22 here).
        double w2 = omega * omega;
        return omega / 2.0 + w2 / 12.0 - w2 * w2 / 720.0 + w2 * w2 * w2 / 30240.0;
    }
    double em = -std::expm1(-omega);  // 1 - e^-omega, no overflow at any omega
    return (omega - em) / em;
}

OmegaParams solve_omega(std::uint64_t n, std::uint64_t k) {
    if (k == 0 || n < k) throw std::domain_error("solve_omega: need 1 <= k <= n");
    OmegaParams out;
    out.n = n;
    out.k = k;
    out.delta = n - k;

    const double target = static_cast<double>(out.delta) / static_cast<double>(k);
    if (out.delta == 0) {
        out.omega = 0.0;
    } else {
        // Root is bracketed in [target, target + 1]; the residual is
        // increasing, so plain bisection down to double resolution suffices.
        double lo = target;
        double hi = target + 1.0;
        for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
            double mid = lo + (hi - lo) / 2.0;
            if (mid <= lo || mid >= hi) break;
            if (poisson_tilt_excess(mid) < target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.omega = lo + (hi - lo) / 2.0;
    }

    using u128 = unsigned __int128;
    u128 d0 = (u128{n} * 2) / k;
    d0 += d0 & 1;
    out.d = static_cast<std::uint64_t>(d0);

    if (u128{k} * 3 > u128{n}) {
        u128 g = (u128{k} * 3 - n + 1) / 2;
        out.g13 = static_cast<std::uint64_t>(g);
    }

    u128 excess = u128{out.d + 1} * k - n;
    out.gd = 2.0 * static_cast<double>(excess) /
             (static_cast<double>(out.d) * static_cast<double>(out.d));
    return out;
}

}  // namespace psamp
