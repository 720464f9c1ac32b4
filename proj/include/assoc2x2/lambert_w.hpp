#ifndef ASSOC2X2_LAMBERT_W_HPP
#define ASSOC2X2_LAMBERT_W_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "assoc2x2/errors.hpp"

namespace assoc2x2 {

/// Real branches of Lambert's W, the inverse of w -> w e^w.
/// W0 covers [-1/e, inf) with W0 >= -1; W-1 covers [-1/e, 0) with W-1 <= -1.
/// Both meet at W(-1/e) = -1.
namespace lambert {

inline constexpr double kTolerance = 1e-14;
inline constexpr int kMaxIterations = 50;

namespace detail {

// 1 + e v, with e split into a double and its rounding residual so that
// values right at the branch point keep their significant digits.
inline double branch_distance(double v) {
    constexpr double e_hi = std::numbers::e;
    constexpr double e_lo = 1.4456468917292502e-16;
    return std::fma(e_hi, v, 1.0) + e_lo * v;
}

// Series about the branch point in p = +/- sqrt(2 (1 + e v)); + for W0, - for W-1.
inline double branch_series(double p) {
    return -1.0 +
           p * (1.0 +
                p * (-1.0 / 3.0 +
                     p * (11.0 / 72.0 +
                          p * (-43.0 / 540.0 + p * (769.0 / 17280.0 + p * (-221.0 / 8505.0))))));
}

// Halley on f(w) = w e^w - v. Near the branch point f is ill-conditioned, so
// the iteration also stops once the steps stop shrinking (rounding floor).
inline double halley_direct(double v, double w) {
    double prev_step = std::numeric_limits<double>::infinity();
    for (int it = 0; it < kMaxIterations; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - v;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0) return w;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        if (it > 0 && std::fabs(step) >= std::fabs(prev_step) && std::fabs(step) < 1e-8) return w;
        w -= step;
        if (!std::isfinite(w)) break;
        if (std::fabs(step) <= kTolerance * std::fabs(w) || step == 0.0) return w;
        prev_step = step;
    }
    throw SolverError("Lambert W: Halley iteration did not converge");
}

// Halley on g(w) = w + ln|w| - ln|v|, used in the tails where w e^w over- or
// underflows (W0 for large v, W-1 for v -> 0-).
inline double halley_log(double v, double w) {
    const double log_v = std::log(std::fabs(v));
    for (int it = 0; it < kMaxIterations; ++it) {
        const double g = w + std::log(std::fabs(w)) - log_v;
        const double g1 = 1.0 + 1.0 / w;
        const double g2 = -1.0 / (w * w);
        const double step = 2.0 * g * g1 / (2.0 * g1 * g1 - g * g2);
        w -= step;
        if (!std::isfinite(w)) break;
        if (std::fabs(step) <= kTolerance * std::fabs(w) || step == 0.0) return w;
    }
    throw SolverError("Lambert W: log-form iteration did not converge");
}

// Returns r = 1 + e v; throws below the branch point, allowing a few ulps of
// rounding in the caller's -1/e.
inline double checked_branch_distance(double v) {
    if (std::isnan(v)) throw DomainError("Lambert W: argument is NaN");
    const double r = branch_distance(v);
    if (r < -8.0 * std::numeric_limits<double>::epsilon()) {
        throw DomainError("Lambert W: argument below -1/e");
    }
    return std::max(r, 0.0);
}

} // namespace detail

} // namespace lambert

inline double lambert_w0(double v) {
    using namespace lambert::detail;
    const double r = checked_branch_distance(v);
    if (!std::isfinite(v)) throw DomainError("Lambert W0: argument must be finite");
    if (v == 0.0) return 0.0;
    if (r == 0.0) return -1.0;
    if (r < 0.25) {
        const double p = std::sqrt(2.0 * r);
        const double w = branch_series(p);
        return p < 1e-3 ? w : halley_direct(v, w);
    }
    if (v < 3.0) return halley_direct(v, std::log1p(v));
    const double l1 = std::log(v);
    const double l2 = std::log(l1);
    return halley_log(v, l1 - l2 + l2 / l1);
}

inline double lambert_w_minus1(double v) {
    using namespace lambert::detail;
    const double r = checked_branch_distance(v);
    if (!(v < 0.0)) throw DomainError("Lambert W-1: argument must be negative");
    if (r == 0.0) return -1.0;
    if (r < 0.25) {
        const double p = -std::sqrt(2.0 * r);
        const double w = branch_series(p);
        return p > -1e-3 ? w : halley_direct(v, w);
    }
    const double l1 = std::log(-v);
    const double l2 = std::log(-l1);
    return halley_log(v, l1 - l2 + l2 / l1);
}

} // namespace assoc2x2

#endif // ASSOC2X2_LAMBERT_W_HPP
