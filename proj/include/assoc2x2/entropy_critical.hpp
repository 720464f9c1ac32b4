#ifndef ASSOC2X2_ENTROPY_CRITICAL_HPP
#define ASSOC2X2_ENTROPY_CRITICAL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string_view>
#include <vector>

#include "assoc2x2/errors.hpp"
#include "assoc2x2/grid_axis.hpp"
#include "assoc2x2/lambert_w.hpp"
#include "assoc2x2/measures.hpp"
#include "assoc2x2/root_finding.hpp"
#include "assoc2x2/table.hpp"

namespace assoc2x2 {

/// W0(1/e)^{-2}: above this odds-ratio the constant-odds-ratio entropy
/// maximum splits from the diagonal table into two L-shaped tables.
inline double magic_odds_ratio() {
    const double w = lambert_w0(std::exp(-1.0));
    return 1.0 / (w * w);
}

enum class CriticalBranch { diag, l_upper, l_lower };
enum class CriticalKind { maximum, saddle };

inline std::string_view to_string(CriticalBranch b) {
    switch (b) {
    case CriticalBranch::diag: return "diag";
    case CriticalBranch::l_upper: return "L_upper";
    case CriticalBranch::l_lower: return "L_lower";
    }
    return "?";
}

inline std::string_view to_string(CriticalKind k) {
    return k == CriticalKind::maximum ? "maximum" : "saddle";
}

/// Critical table of the entropy restricted to a constant odds-ratio.
///
/// For L > 1, l_upper has the larger off-diagonal cell in p01 (y > 0) and
/// l_lower is its transpose. The multipliers belong to the stationarity
/// system of -sum p ln p under the constraints
/// ln p00 - ln p01 - ln p10 + ln p11 = ln L and sum p = 1.
struct CriticalPoint {
    ProbTable table;
    MarginCoords coords;
    CriticalKind classification;
    CriticalBranch branch;
    double multiplier_odds;  // attached to the odds-ratio constraint
    double multiplier_mass;  // attached to the normalization constraint
};

// ---------------------------------------------------------------------------
// Second derivatives

/// d^2 H / d nu^2 at nu = 1 along (a, nu c; c / nu, a), in bits, for the
/// diagonal table of odds-ratio L. Positive exactly when L exceeds the magic
/// odds-ratio (or falls below its reciprocal).
inline double diag_entropy_curvature_nu(double odds_ratio) {
    const double s = std::sqrt(odds_ratio >= 1.0 ? odds_ratio : 1.0 / odds_ratio);
    return -(1.0 / (1.0 + s)) * (1.0 - s / (1.0 + s) * std::log(s)) / std::numbers::ln2;
}

/// d^2 H / d mu^2 at mu = 1 along (mu a, c; c, a / mu), in bits. Always negative.
inline double diag_entropy_curvature_mu(double odds_ratio) {
    const double s = std::sqrt(odds_ratio >= 1.0 ? odds_ratio : 1.0 / odds_ratio);
    return -(s / (1.0 + s)) * (1.0 + std::log(s) / (1.0 + s)) / std::numbers::ln2;
}

/// Hessian of the entropy (bits) in the orbit coordinates (y, z) at fixed x.
struct OrbitHessian {
    double yy = 0.0;
    double yz = 0.0;
    double zz = 0.0;

    bool negative_definite() const { return yy < 0.0 && yy * zz - yz * yz > 0.0; }
};

/// Closed-form Hessian from the exponential-family form p ~ exp(theta),
/// theta = (x+y+z, y, z, x):
///   d2H[u, v] = -Cov(u, v) - E[(theta - E theta)(u - E u)(v - E v)]  (nats).
inline OrbitHessian entropy_orbit_hessian(const MarginCoords& c) {
    const ProbTable t = psi(c);
    const std::array<double, 4> th{c.x + c.y + c.z, c.y, c.z, c.x};
    const std::array<double, 4> uy{1.0, 1.0, 0.0, 0.0};
    const std::array<double, 4> uz{1.0, 0.0, 1.0, 0.0};
    double m_th = 0.0, m_y = 0.0, m_z = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double p = t.cells()[k];
        m_th += p * th[k];
        m_y += p * uy[k];
        m_z += p * uz[k];
    }
    auto second = [&](const std::array<double, 4>& u, double mu, const std::array<double, 4>& v,
                      double mv) {
        double cov = 0.0, third = 0.0;
        for (int k = 0; k < 4; ++k) {
            const double p = t.cells()[k];
            const double du = u[k] - mu, dv = v[k] - mv;
            cov += p * du * dv;
            third += p * (th[k] - m_th) * du * dv;
        }
        return -(cov + third) / std::numbers::ln2;
    };
    return {second(uy, m_y, uy, m_y), second(uy, m_y, uz, m_z), second(uz, m_z, uz, m_z)};
}

// ---------------------------------------------------------------------------
// Critical point solver

namespace detail {

enum class OffDiagBranches { principal, lower, mixed };

// Critical tables are p00 = p11 = A / W0(s) and p01, p10 = -A / W(-s) for an
// auxiliary s in (0, 1/e], W(-s) taken on the principal or the lower branch.
// This is the log odds-ratio of that table as a function of ln s.
struct BranchEquation {
    OffDiagBranches branches;

    std::array<double, 2> off_diag_w(double s) const {
        switch (branches) {
        case OffDiagBranches::principal: {
            const double w = lambert_w0(-s);
            return {w, w};
        }
        case OffDiagBranches::lower: {
            const double w = lambert_w_minus1(-s);
            return {w, w};
        }
        case OffDiagBranches::mixed:
            return {lambert_w0(-s), lambert_w_minus1(-s)};
        }
        return {0.0, 0.0};
    }

    double log_odds(double log_s) const {
        const double s = std::exp(log_s);
        const auto w = off_diag_w(s);
        return std::log(-w[0]) + std::log(-w[1]) - 2.0 * std::log(lambert_w0(s));
    }
};

inline constexpr double kLogSMin = -700.0;
inline constexpr double kLogSMax = -1.0; // s = 1/e, the common branch point

inline double solve_branch(const BranchEquation& eq, double log_l) {
    auto f = [&](double u) { return eq.log_odds(u) - log_l; };
    const double f_hi = f(kLogSMax);
    // Right at the bifurcation the root sits on the branch point itself and
    // rounding can put both endpoint values on one side.
    if (std::fabs(f_hi) <= 1e-12 * std::max(1.0, std::fabs(log_l))) return kLogSMax;
    return solve_bracketed(f, kLogSMin, kLogSMax);
}

inline CriticalPoint point_from_branch(const BranchEquation& eq, double log_s,
                                       CriticalBranch branch) {
    const double s = std::exp(log_s);
    const double w_diag = lambert_w0(s);
    const auto w_off = eq.off_diag_w(s);
    const std::array<double, 4> raw{1.0 / w_diag, -1.0 / w_off[0], -1.0 / w_off[1],
                                    1.0 / w_diag};
    const double lambda_odds = 1.0 / ((raw[0] + raw[1]) + (raw[2] + raw[3]));
    const ProbTable t = make_table(raw);
    const double lambda_mass = std::log(t.p00()) + 1.0 - w_diag;
    return {t, theta(t), CriticalKind::maximum, branch, lambda_odds, lambda_mass};
}

inline CriticalPoint transposed(const CriticalPoint& cp, CriticalBranch branch) {
    const ProbTable t = symmetry_apply(cp.table, Symmetry::transpose_markers);
    return {t, theta(t), cp.classification, branch, cp.multiplier_odds, cp.multiplier_mass};
}

inline CriticalKind classify(const MarginCoords& c) {
    return entropy_orbit_hessian(c).negative_definite() ? CriticalKind::maximum
                                                         : CriticalKind::saddle;
}

// L > 1
inline std::vector<CriticalPoint> critical_points_above_one(double odds_ratio) {
    const double log_l = std::log(odds_ratio);
    const bool split = diag_entropy_curvature_nu(odds_ratio) > 0.0;

    std::vector<CriticalPoint> out;
    const BranchEquation diag_eq{split ? OffDiagBranches::lower : OffDiagBranches::principal};
    CriticalPoint diag = point_from_branch(diag_eq, solve_branch(diag_eq, log_l),
                                           CriticalBranch::diag);
    diag.classification = split ? CriticalKind::saddle : CriticalKind::maximum;
    out.push_back(diag);
    if (!split) return out;

    const BranchEquation mixed{OffDiagBranches::mixed};
    CriticalPoint upper =
        point_from_branch(mixed, solve_branch(mixed, log_l), CriticalBranch::l_upper);
    upper.classification = classify(upper.coords);
    out.push_back(upper);
    out.push_back(transposed(upper, CriticalBranch::l_lower));
    return out;
}

} // namespace detail

/// Critical points of the entropy on the plane of odds-ratio L.
///
/// Up to the magic odds-ratio the diagonal table is the only critical point
/// and a maximum; beyond it the diagonal becomes a saddle flanked by two
/// L-shaped maxima. For L < 1 the points for 1/L are mapped by a column swap
/// (principal and secondary diagonals exchange roles).
inline std::vector<CriticalPoint> critical_points(double odds_ratio) {
    if (!std::isfinite(odds_ratio) || !(odds_ratio > 0.0)) {
        throw DomainError("odds-ratio must be finite and positive");
    }
    if (odds_ratio == 1.0) {
        const ProbTable mid = make_table(1.0, 1.0, 1.0, 1.0);
        return {{mid, theta(mid), CriticalKind::maximum, CriticalBranch::diag, 0.0,
                 std::log(0.25) + 1.0}};
    }
    if (odds_ratio > 1.0) return detail::critical_points_above_one(odds_ratio);

    auto points = detail::critical_points_above_one(1.0 / odds_ratio);
    for (auto& cp : points) {
        cp.table = symmetry_apply(cp.table, Symmetry::swap_cols);
        cp.coords = theta(cp.table);
        cp.multiplier_odds = -cp.multiplier_odds;
    }
    return points;
}

struct GridArgmax {
    double y = 0.0;
    double z = 0.0;
    double value = -std::numeric_limits<double>::infinity();
};

/// Brute-force maximum of the entropy over the (y, z) grid at x = ln sqrt(L).
/// Ties go to the lexicographically smallest (y, z).
inline GridArgmax entropy_grid_argmax(double odds_ratio, double half_width, double step) {
    if (!std::isfinite(odds_ratio) || !(odds_ratio > 0.0)) {
        throw DomainError("odds-ratio must be finite and positive");
    }
    const double x = 0.5 * std::log(odds_ratio);
    const auto axis = grid_axis(half_width, step);
    GridArgmax best;
    for (double y : axis) {
        for (double z : axis) {
            const double h = entropy_coords(MarginCoords{x, y, z});
            if (h > best.value) best = {y, z, h};
        }
    }
    return best;
}

} // namespace assoc2x2

#endif // ASSOC2X2_ENTROPY_CRITICAL_HPP
