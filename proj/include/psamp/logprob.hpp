#pragma once

#include <cmath>
#include <limits>

namespace psamp {

// Natural-log probability carrier. -inf encodes an exact zero. Genuine
// probabilities satisfy value <= 0; dominating rejection bounds may carry
// value > 0 (they are constants that majorize a probability, not
// probabilities themselves), so the range is not enforced here.
struct LogProb {
    double value = -std::numeric_limits<double>::infinity();

    static LogProb zero() { return {}; }
    static LogProb one() { return {0.0}; }
    static LogProb from_log(double v) { return {v}; }

    bool is_zero() const { return std::isinf(value) && value < 0; }

    // exp(value) clamped into [0, 1]; tiny positive drift above log 1 from
    // floating-point noise collapses to probability 1.
    double prob() const {
        if (is_zero()) return 0.0;
        double p = std::exp(value);
        return p > 1.0 ? 1.0 : p;
    }
};

}  // namespace psamp
