#pragma once

#include <cmath>

namespace gain {

// Log arguments are clamped to [1e-8, 1-1e-8] before any logarithm so the
// cross-entropy sums stay finite. safe_log_grad is the matching derivative
// of log(clamp(v)): zero in the clamped regions, 1/v inside.
inline constexpr double kLogClampLo = 1e-8;
inline constexpr double kLogClampHi = 1.0 - 1e-8;

inline double safe_log(double v) {
    if (v < kLogClampLo) v = kLogClampLo;
    if (v > kLogClampHi) v = kLogClampHi;
    return std::log(v);
}

inline double safe_log_grad(double v) {
    if (v < kLogClampLo || v > kLogClampHi) return 0.0;
    return 1.0 / v;
}

}  // namespace gain
