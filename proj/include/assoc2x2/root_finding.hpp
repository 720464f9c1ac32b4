#ifndef ASSOC2X2_ROOT_FINDING_HPP
#define ASSOC2X2_ROOT_FINDING_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "assoc2x2/errors.hpp"

namespace assoc2x2 {

struct RootOptions {
    int bisection_steps = 40;  // plain halvings before switching to secant steps
    int max_iterations = 400;
    double rel_tolerance = 4.0 * std::numeric_limits<double>::epsilon();
};

/// Root of f in [lo, hi] given a sign change.
///
/// Bisection first shrinks the bracket, then Illinois-modified secant steps
/// refine it; a secant step that leaves the bracket falls back to bisection.
/// Throws SolverError if the endpoints do not bracket a root or the
/// iteration budget runs out.
template <class F>
double solve_bracketed(F&& f, double lo, double hi, const RootOptions& opt = {}) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::isnan(flo) || std::isnan(fhi) || std::signbit(flo) == std::signbit(fhi)) {
        throw SolverError("root not bracketed on [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    }
    int retained = 0; // +1 when lo was kept last step, -1 when hi was kept
    for (int it = 0; it < opt.max_iterations; ++it) {
        const double width = hi - lo;
        const double scale = std::max({std::fabs(lo), std::fabs(hi), 1e-300});
        if (std::fabs(width) <= opt.rel_tolerance * scale) {
            return std::fabs(flo) < std::fabs(fhi) ? lo : hi;
        }
        double x = lo + 0.5 * width;
        if (it >= opt.bisection_steps) {
            const double s = hi - fhi * (hi - lo) / (fhi - flo);
            if (s > std::min(lo, hi) && s < std::max(lo, hi)) x = s;
        }
        if (x == lo || x == hi) {
            return std::fabs(flo) < std::fabs(fhi) ? lo : hi;
        }
        const double fx = f(x);
        if (fx == 0.0) return x;
        if (std::isnan(fx)) throw SolverError("objective returned NaN at " + std::to_string(x));
        if (std::signbit(fx) == std::signbit(flo)) {
            lo = x;
            flo = fx;
            if (retained == -1) fhi *= 0.5;
            retained = -1;
        } else {
            hi = x;
            fhi = fx;
            if (retained == 1) flo *= 0.5;
            retained = 1;
        }
    }
    throw SolverError("bracketed root search did not converge");
}

} // namespace assoc2x2

#endif // ASSOC2X2_ROOT_FINDING_HPP
