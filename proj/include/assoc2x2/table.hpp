#ifndef ASSOC2X2_TABLE_HPP
#define ASSOC2X2_TABLE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

#include "assoc2x2/errors.hpp"

namespace assoc2x2 {

/// Cell positions in row-major order; the first digit is the state of marker A
/// (row), the second the state of marker B (column).
enum class Cell : int { p00 = 0, p01 = 1, p10 = 2, p11 = 3 };

inline std::string_view to_string(Cell c) {
    switch (c) {
    case Cell::p00: return "p00";
    case Cell::p01: return "p01";
    case Cell::p10: return "p10";
    case Cell::p11: return "p11";
    }
    return "?";
}

class ProbTable;
inline ProbTable make_table(double w00, double w01, double w10, double w11);

/// A strictly positive 2x2 probability table summing to one.
///
/// Only constructible through make_table() (or operations built on it), so
/// every instance is an interior point of the open simplex.
class ProbTable {
public:
    double p00() const noexcept { return p_[0]; }
    double p01() const noexcept { return p_[1]; }
    double p10() const noexcept { return p_[2]; }
    double p11() const noexcept { return p_[3]; }

    double operator[](Cell c) const noexcept { return p_[static_cast<int>(c)]; }
    double cell(int row, int col) const noexcept { return p_[2 * row + col]; }
    const std::array<double, 4>& cells() const noexcept { return p_; }

    /// p_{i.}
    double row_margin(int row) const noexcept { return p_[2 * row] + p_[2 * row + 1]; }
    /// p_{.j}
    double col_margin(int col) const noexcept { return p_[col] + p_[2 + col]; }

    /// Additive deviation from independence, p00*p11 - p01*p10.
    double d() const noexcept { return p_[0] * p_[3] - p_[1] * p_[2]; }

    double min_cell() const noexcept { return *std::min_element(p_.begin(), p_.end()); }

    friend ProbTable make_table(double w00, double w01, double w10, double w11);

private:
    explicit ProbTable(const std::array<double, 4>& p) : p_(p) {}
    std::array<double, 4> p_;
};

/// Builds a table from positive weights, renormalizing them to sum to one.
inline ProbTable make_table(double w00, double w01, double w10, double w11) {
    const std::array<double, 4> w{w00, w01, w10, w11};
    for (double v : w) {
        if (!std::isfinite(v) || !(v > 0.0)) {
            throw DegenerateTable("table weights must be finite and strictly positive");
        }
    }
    const double total = (w00 + w01) + (w10 + w11);
    if (!std::isfinite(total)) {
        throw DegenerateTable("table weights overflow on normalization");
    }
    std::array<double, 4> p{};
    for (std::size_t k = 0; k < 4; ++k) {
        p[k] = w[k] / total;
        if (!(p[k] > 0.0)) {
            throw DegenerateTable("table cell underflows to zero on normalization");
        }
    }
    return ProbTable(p);
}

inline ProbTable make_table(const std::array<double, 4>& w) {
    return make_table(w[0], w[1], w[2], w[3]);
}

/// Margin-transformation coordinates, natural-log scale.
/// x is half the log odds-ratio; (y, z) locate the table within its orbit.
struct MarginCoords {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Multiplies row 0 by mu and column 0 by nu, then renormalizes.
/// Preserves the odds-ratio; g(mu, nu) o g(mu', nu') = g(mu mu', nu nu').
inline ProbTable margin_transform(const ProbTable& t, double mu, double nu) {
    if (!std::isfinite(mu) || !(mu > 0.0) || !std::isfinite(nu) || !(nu > 0.0)) {
        throw DegenerateTable("margin transformation needs finite positive mu and nu");
    }
    return make_table(mu * nu * t.p00(), mu * t.p01(), nu * t.p10(), t.p11());
}

/// Diagonal table (a, b; b, a) with the given odds-ratio; margins all 1/2.
inline ProbTable diagonal_table(double odds_ratio) {
    if (!std::isfinite(odds_ratio) || !(odds_ratio > 0.0)) {
        throw DegenerateTable("odds-ratio must be finite and positive");
    }
    const double s = std::sqrt(odds_ratio);
    return make_table(s, 1.0, 1.0, s);
}

/// The member of t's orbit with all margins equal to 1/2.
inline ProbTable margin_representative(const ProbTable& t) {
    const double mu = std::sqrt((t.p10() * t.p11()) / (t.p00() * t.p01()));
    const double nu = std::sqrt((t.p01() * t.p11()) / (t.p00() * t.p10()));
    return margin_transform(t, mu, nu);
}

inline MarginCoords theta(const ProbTable& t) {
    const double l00 = std::log(t.p00());
    const double l01 = std::log(t.p01());
    const double l10 = std::log(t.p10());
    const double l11 = std::log(t.p11());
    return {0.5 * ((l00 + l11) - (l01 + l10)),
            0.5 * ((l00 + l01) - (l10 + l11)),
            0.5 * ((l00 + l10) - (l01 + l11))};
}

/// Inverse of theta: the table proportional to (e^{x+y+z}, e^y; e^z, e^x).
///
/// Exponents are shifted by their maximum before exponentiation, so no
/// finite input produces inf or NaN. Throws OverflowError when the spread of
/// exponents is so wide that a cell would underflow to zero.
inline ProbTable psi(const MarginCoords& c) {
    if (!std::isfinite(c.x) || !std::isfinite(c.y) || !std::isfinite(c.z)) {
        throw OverflowError("margin coordinates must be finite");
    }
    const std::array<double, 4> e{c.x + c.y + c.z, c.y, c.z, c.x};
    if (!std::isfinite(e[0])) {
        throw OverflowError("x + y + z is not representable");
    }
    const double m = *std::max_element(e.begin(), e.end());
    std::array<double, 4> w{};
    for (std::size_t k = 0; k < 4; ++k) {
        w[k] = std::exp(e[k] - m);
        if (!(w[k] > 0.0)) {
            throw OverflowError("coordinate spread too wide: a table cell underflows");
        }
    }
    return make_table(w);
}

// ---------------------------------------------------------------------------
// Symmetries

enum class Symmetry { transpose_markers, swap_rows, swap_cols };

inline ProbTable symmetry_apply(const ProbTable& t, Symmetry op) {
    switch (op) {
    case Symmetry::transpose_markers:
        return make_table(t.p00(), t.p10(), t.p01(), t.p11());
    case Symmetry::swap_rows:
        return make_table(t.p10(), t.p11(), t.p00(), t.p01());
    case Symmetry::swap_cols:
        return make_table(t.p01(), t.p00(), t.p11(), t.p10());
    }
    return t;
}

/// Action of the same symmetry in margin coordinates.
/// A single row (column) swap also inverts the odds-ratio, hence x -> -x.
inline MarginCoords symmetry_apply(const MarginCoords& c, Symmetry op) {
    switch (op) {
    case Symmetry::transpose_markers: return {c.x, c.z, c.y};
    case Symmetry::swap_rows: return {-c.x, -c.y, c.z};
    case Symmetry::swap_cols: return {-c.x, c.y, -c.z};
    }
    return c;
}

// ---------------------------------------------------------------------------
// Boundary of the closed simplex

enum class AxisLimit { minus_inf, finite, plus_inf };

/// Boundary stratum of the compactified coordinate cube, e.g. (+, *, -).
struct SignPattern {
    AxisLimit sx = AxisLimit::finite;
    AxisLimit sy = AxisLimit::finite;
    AxisLimit sz = AxisLimit::finite;

    bool is_boundary() const noexcept {
        return sx != AxisLimit::finite || sy != AxisLimit::finite || sz != AxisLimit::finite;
    }
    bool is_vertex() const noexcept {
        return sx != AxisLimit::finite && sy != AxisLimit::finite && sz != AxisLimit::finite;
    }
};

enum class BoundaryKind {
    vertex_single_one,  // detail: the cell equal to one
    face_single_zero,   // detail: the zero cell
    diagonal_edge_main, // p00 = p11 = 0
    diagonal_edge_anti, // p01 = p10 = 0
    vanishing_row,      // detail: row index i with p_{i.} = 0
    vanishing_column,   // detail: column index j with p_{.j} = 0
};

inline std::string_view to_string(BoundaryKind k) {
    switch (k) {
    case BoundaryKind::vertex_single_one: return "vertex_single_one";
    case BoundaryKind::face_single_zero: return "face_single_zero";
    case BoundaryKind::diagonal_edge_main: return "diagonal_edge_main";
    case BoundaryKind::diagonal_edge_anti: return "diagonal_edge_anti";
    case BoundaryKind::vanishing_row: return "vanishing_row";
    case BoundaryKind::vanishing_column: return "vanishing_column";
    }
    return "?";
}

struct BoundaryClass {
    BoundaryKind kind = BoundaryKind::vertex_single_one;
    int detail = 0; // cell index, row, or column depending on kind; 0 for diagonals

    friend bool operator==(const BoundaryClass&, const BoundaryClass&) = default;
};

/// A point of the closed simplex; cells may be exactly zero.
struct LimitPoint {
    std::array<double, 4> cells{};
    BoundaryClass stratum;
};

namespace detail {

// Sign of a + b, exact for finite doubles: rounding never crosses zero.
inline int sum_sign(double a, double b) {
    const double s = a + b;
    return (s > 0.0) - (s < 0.0);
}

inline BoundaryClass classify_zeros(const std::array<bool, 4>& zero) {
    int count = 0;
    for (bool z : zero) count += z ? 1 : 0;
    auto first = [&](bool want) {
        for (int k = 0; k < 4; ++k) {
            if (zero[k] == want) return k;
        }
        return -1;
    };
    if (count == 3) return {BoundaryKind::vertex_single_one, first(false)};
    if (count == 1) return {BoundaryKind::face_single_zero, first(true)};
    if (zero[0] && zero[3]) return {BoundaryKind::diagonal_edge_main, 0};
    if (zero[1] && zero[2]) return {BoundaryKind::diagonal_edge_anti, 0};
    if (zero[0] && zero[1]) return {BoundaryKind::vanishing_row, 0};
    if (zero[2] && zero[3]) return {BoundaryKind::vanishing_row, 1};
    if (zero[0] && zero[2]) return {BoundaryKind::vanishing_column, 0};
    return {BoundaryKind::vanishing_column, 1};
}

} // namespace detail

/// Limit of psi(s * direction) as s -> infinity.
///
/// Cell exponents grow like s * (x+y+z, y, z, x); the limit spreads the mass
/// uniformly over the cells attaining the largest rate. Ties are decided by
/// exact sign tests on pairwise differences, never by a tolerance.
inline LimitPoint ray_limit(const MarginCoords& direction) {
    const double x = direction.x, y = direction.y, z = direction.z;
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
        throw DomainError("ray direction must be finite");
    }
    if (x == 0.0 && y == 0.0 && z == 0.0) {
        throw DomainError("ray direction must be non-zero");
    }
    // cmp[k][j] = sign(e_k - e_j) with e = (x+y+z, y, z, x)
    int cmp[4][4] = {};
    cmp[0][1] = detail::sum_sign(x, z);
    cmp[0][2] = detail::sum_sign(x, y);
    cmp[0][3] = detail::sum_sign(y, z);
    cmp[1][2] = detail::sum_sign(y, -z);
    cmp[1][3] = detail::sum_sign(y, -x);
    cmp[2][3] = detail::sum_sign(z, -x);
    for (int k = 0; k < 4; ++k) {
        for (int j = 0; j < k; ++j) cmp[k][j] = -cmp[j][k];
    }

    std::array<bool, 4> top{};
    int n_top = 0;
    for (int k = 0; k < 4; ++k) {
        top[k] = true;
        for (int j = 0; j < 4; ++j) {
            if (j != k && cmp[k][j] < 0) top[k] = false;
        }
        n_top += top[k] ? 1 : 0;
    }

    LimitPoint out;
    std::array<bool, 4> zero{};
    for (int k = 0; k < 4; ++k) {
        out.cells[k] = top[k] ? 1.0 / n_top : 0.0;
        zero[k] = !top[k];
    }
    out.stratum = detail::classify_zeros(zero);
    return out;
}

/// Ray limit along the representative ray of a boundary pattern
/// (+/-1 on infinite axes, 0 on finite ones).
inline LimitPoint ray_limit(const SignPattern& pattern) {
    if (!pattern.is_boundary()) {
        throw DomainError("sign pattern must have at least one infinite coordinate");
    }
    auto unit = [](AxisLimit a) {
        return a == AxisLimit::plus_inf ? 1.0 : a == AxisLimit::minus_inf ? -1.0 : 0.0;
    };
    return ray_limit(MarginCoords{unit(pattern.sx), unit(pattern.sy), unit(pattern.sz)});
}

/// True for the cube vertices whose limit is a vertex of the closed simplex.
inline bool maps_to_table_vertex(const SignPattern& pattern) {
    if (!pattern.is_vertex()) return false;
    return ray_limit(pattern).stratum.kind == BoundaryKind::vertex_single_one;
}

} // namespace assoc2x2

#endif // ASSOC2X2_TABLE_HPP
