#ifndef ASSOC2X2_MEASURES_HPP
#define ASSOC2X2_MEASURES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "assoc2x2/errors.hpp"
#include "assoc2x2/table.hpp"

namespace assoc2x2 {

enum class MeasureTag {
    odds_ratio,
    yule_q,
    yule_y,
    d_raw,
    d_prime,
    corr_r,
    mut_inf,
    s_mut_inf,
    kappa,
    entropy,
    entropy_diag,
    hs,
};

inline constexpr double kDefaultHsWeight = 4.0;

/// A measure together with its parameter; n is the entropy weight of HS_n
/// and is ignored for every other tag.
struct MeasureKind {
    MeasureTag tag = MeasureTag::yule_y;
    double n = kDefaultHsWeight;

    friend bool operator==(const MeasureKind& a, const MeasureKind& b) {
        return a.tag == b.tag && (a.tag != MeasureTag::hs || a.n == b.n);
    }
};

inline constexpr std::array<MeasureTag, 12> kAllMeasureTags{
    MeasureTag::odds_ratio, MeasureTag::yule_q,    MeasureTag::yule_y,
    MeasureTag::d_raw,      MeasureTag::d_prime,   MeasureTag::corr_r,
    MeasureTag::mut_inf,    MeasureTag::s_mut_inf, MeasureTag::kappa,
    MeasureTag::entropy,    MeasureTag::entropy_diag, MeasureTag::hs,
};

/// Command-line name of a measure.
inline std::string_view measure_name(MeasureTag tag) {
    switch (tag) {
    case MeasureTag::odds_ratio: return "lambda";
    case MeasureTag::yule_q: return "Q";
    case MeasureTag::yule_y: return "Y";
    case MeasureTag::d_raw: return "D";
    case MeasureTag::d_prime: return "Dprime";
    case MeasureTag::corr_r: return "r";
    case MeasureTag::mut_inf: return "MI";
    case MeasureTag::s_mut_inf: return "sMI";
    case MeasureTag::kappa: return "kappa";
    case MeasureTag::entropy: return "H";
    case MeasureTag::entropy_diag: return "Hdiag";
    case MeasureTag::hs: return "HS";
    }
    return "?";
}

inline std::optional<MeasureTag> parse_measure_tag(std::string_view name) {
    for (MeasureTag tag : kAllMeasureTags) {
        if (measure_name(tag) == name) return tag;
    }
    return std::nullopt;
}

inline MeasureKind parse_measure(std::string_view name, double n = kDefaultHsWeight) {
    auto tag = parse_measure_tag(name);
    if (!tag) throw std::invalid_argument("unknown measure '" + std::string(name) + "'");
    return {*tag, n};
}

// ---------------------------------------------------------------------------
// Direct forms

inline double odds_ratio(const ProbTable& t) {
    return (t.p00() * t.p11()) / (t.p01() * t.p10());
}

inline double yule_q(const ProbTable& t) {
    const double l = odds_ratio(t);
    return (l - 1.0) / (l + 1.0);
}

inline double yule_y(const ProbTable& t) {
    const double s = std::sqrt(odds_ratio(t));
    return (s - 1.0) / (s + 1.0);
}

inline double d_raw(const ProbTable& t) { return t.d(); }

/// Largest |D| attainable with t's margins and the sign of t's D.
inline double d_max(const ProbTable& t) {
    const double r0 = t.row_margin(0), r1 = t.row_margin(1);
    const double c0 = t.col_margin(0), c1 = t.col_margin(1);
    if (t.d() >= 0.0) return std::min(r0 * c1, c0 * r1);
    return std::min(r0 * c0, r1 * c1);
}

/// Lewontin's D'.
inline double d_prime(const ProbTable& t) { return t.d() / d_max(t); }

inline double corr_r(const ProbTable& t) {
    const double v = t.row_margin(0) * t.col_margin(0) * t.row_margin(1) * t.col_margin(1);
    return t.d() / std::sqrt(v);
}

/// Mutual information in bits.
inline double mut_inf(const ProbTable& t) {
    double acc = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double p = t.cell(i, j);
            acc += p * std::log2(p / (t.row_margin(i) * t.col_margin(j)));
        }
    }
    return std::max(acc, 0.0);
}

inline double s_mut_inf(const ProbTable& t) {
    const double d = t.d();
    if (d == 0.0) return 0.0;
    return std::copysign(mut_inf(t), d);
}

/// Cohen's kappa. Not a measure of association: it is not sign-symmetric
/// under a single row or column swap when the margins are unequal.
inline double kappa(const ProbTable& t) {
    const double chance =
        t.row_margin(0) * t.col_margin(0) + t.row_margin(1) * t.col_margin(1);
    const double den = 1.0 - chance;
    if (!(den > 0.0)) throw UndefinedKappa("kappa undefined: chance agreement is one");
    return (t.p00() + t.p11() - chance) / den;
}

/// Shannon entropy in bits.
inline double entropy(const ProbTable& t) {
    double acc = 0.0;
    for (double p : t.cells()) acc -= p * std::log2(p);
    return acc;
}

namespace detail {

inline double softplus(double v) {
    return v > 0.0 ? v + std::log1p(std::exp(-v)) : std::log1p(std::exp(v));
}

inline double logistic(double v) {
    if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
    const double e = std::exp(v);
    return e / (1.0 + e);
}

// -p log2 p - (1-p) log2(1-p), with 0 log 0 = 0
inline double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

} // namespace detail

/// Entropy of the diagonal table with half-log odds-ratio x:
/// 1 + log2(1 + e^x) - x / (ln 2 (e^{-x} + 1)).
inline double entropy_diag_at(double x) {
    return 1.0 + (detail::softplus(x) - x * detail::logistic(x)) / std::numbers::ln2;
}

/// Entropy of the diagonal table sharing t's odds-ratio.
inline double entropy_diag(const ProbTable& t) { return entropy_diag_at(theta(t).x); }

namespace detail {

inline double hs_from_parts(double y, double h_diag, double h, double n) {
    if (y == 0.0) return y;
    const double exponent = std::exp(n * (h_diag - h));
    return std::copysign(std::pow(std::fabs(y), exponent), y);
}

inline void check_hs_weight(double n) {
    if (!std::isfinite(n) || n < 0.0) {
        throw std::invalid_argument("HS weight n must be finite and non-negative");
    }
}

} // namespace detail

/// Entropy-weighted Yule's Y: sign(Y) |Y|^{exp(n (H_diag - H))}.
///
/// Junk tables (nearly vanishing row or column) have H well below H_diag and
/// are pulled toward zero; L-shaped tables with large odds-ratio have
/// H > H_diag and are pushed toward +/-1. hs(t, 0) == yule_y(t) exactly.
inline double hs(const ProbTable& t, double n = kDefaultHsWeight) {
    detail::check_hs_weight(n);
    return detail::hs_from_parts(yule_y(t), entropy_diag(t), entropy(t), n);
}

inline double evaluate(const MeasureKind& kind, const ProbTable& t) {
    switch (kind.tag) {
    case MeasureTag::odds_ratio: return odds_ratio(t);
    case MeasureTag::yule_q: return yule_q(t);
    case MeasureTag::yule_y: return yule_y(t);
    case MeasureTag::d_raw: return d_raw(t);
    case MeasureTag::d_prime: return d_prime(t);
    case MeasureTag::corr_r: return corr_r(t);
    case MeasureTag::mut_inf: return mut_inf(t);
    case MeasureTag::s_mut_inf: return s_mut_inf(t);
    case MeasureTag::kappa: return kappa(t);
    case MeasureTag::entropy: return entropy(t);
    case MeasureTag::entropy_diag: return entropy_diag(t);
    case MeasureTag::hs: return hs(t, kind.n);
    }
    throw UnsupportedKind("unknown measure tag");
}

// ---------------------------------------------------------------------------
// Margin-coordinate forms

inline bool has_coordinate_form(MeasureTag tag) {
    switch (tag) {
    case MeasureTag::yule_y:
    case MeasureTag::corr_r:
    case MeasureTag::d_prime:
    case MeasureTag::entropy:
    case MeasureTag::entropy_diag:
    case MeasureTag::hs:
        return true;
    default:
        return false;
    }
}

namespace detail {

// Cell weights (e^{x+y+z}, e^y, e^z, e^x) scaled by e^{-m}, m the largest exponent.
struct ScaledCells {
    std::array<double, 4> exponent;
    std::array<double, 4> w;
    double m;
};

inline ScaledCells scaled_cells(const MarginCoords& c) {
    ScaledCells s{{c.x + c.y + c.z, c.y, c.z, c.x}, {}, 0.0};
    s.m = std::max(std::max(s.exponent[0], s.exponent[1]), std::max(s.exponent[2], s.exponent[3]));
    for (int k = 0; k < 4; ++k) s.w[k] = std::exp(s.exponent[k] - s.m);
    return s;
}

// (e^{2x} - 1) e^{y+z}, scaled by e^{-2m}
inline double scaled_d_numerator(const MarginCoords& c, const ScaledCells& s) {
    if (c.x >= 0.0) return s.w[0] * s.w[3] * -std::expm1(-2.0 * c.x);
    return s.w[1] * s.w[2] * std::expm1(2.0 * c.x);
}

inline double entropy_coords(const ScaledCells& s) {
    const double total = (s.w[0] + s.w[1]) + (s.w[2] + s.w[3]);
    // log S - sum_k e_k e^{e_k} / S, rewritten around the largest exponent
    double spread = 0.0;
    for (int k = 0; k < 4; ++k) spread += (s.m - s.exponent[k]) * s.w[k];
    return (std::log(total) + spread / total) / std::numbers::ln2;
}

} // namespace detail

inline double yule_y_coords(const MarginCoords& c) { return std::tanh(0.5 * c.x); }

inline double corr_r_coords(const MarginCoords& c) {
    const auto s = detail::scaled_cells(c);
    const auto& w = s.w;
    const double den = std::sqrt((w[0] + w[1]) * (w[0] + w[2]) * (w[3] + w[1]) * (w[3] + w[2]));
    return detail::scaled_d_numerator(c, s) / den;
}

inline double d_prime_coords(const MarginCoords& c) {
    const auto s = detail::scaled_cells(c);
    const auto& w = s.w; // w[0] = e^{x+y+z}, w[1] = e^y, w[2] = e^z, w[3] = e^x
    double dmax = 0.0;
    if (c.x >= 0.0) {
        dmax = c.y < c.z ? (w[0] + w[1]) * (w[3] + w[1]) : (w[0] + w[2]) * (w[3] + w[2]);
    } else {
        dmax = c.y < -c.z ? (w[0] + w[1]) * (w[0] + w[2]) : (w[3] + w[1]) * (w[3] + w[2]);
    }
    return detail::scaled_d_numerator(c, s) / dmax;
}

inline double entropy_coords(const MarginCoords& c) {
    return detail::entropy_coords(detail::scaled_cells(c));
}

inline double hs_coords(const MarginCoords& c, double n = kDefaultHsWeight) {
    detail::check_hs_weight(n);
    return detail::hs_from_parts(yule_y_coords(c), entropy_diag_at(c.x), entropy_coords(c), n);
}

/// Evaluates a measure from its closed form in margin coordinates.
/// Throws UnsupportedKind for measures without one; use evaluate(kind, psi(c)).
inline double eval_in_coords(const MeasureKind& kind, const MarginCoords& c) {
    switch (kind.tag) {
    case MeasureTag::yule_y: return yule_y_coords(c);
    case MeasureTag::corr_r: return corr_r_coords(c);
    case MeasureTag::d_prime: return d_prime_coords(c);
    case MeasureTag::entropy: return entropy_coords(c);
    case MeasureTag::entropy_diag: return entropy_diag_at(c.x);
    case MeasureTag::hs: return hs_coords(c, kind.n);
    default:
        throw UnsupportedKind("no margin-coordinate form for " +
                              std::string(measure_name(kind.tag)));
    }
}

// ---------------------------------------------------------------------------
// Limits at the margins of a constant odds-ratio plane

enum class Axis { y, z };
enum class Direction { plus, minus };

/// Closed-form limit of a margin weighting function as one orbit coordinate
/// (axis) runs to +/- infinity at fixed x, the remaining coordinate held at
/// `other`.
inline double margin_limit(const MeasureKind& kind, double x, Axis axis, Direction dir,
                           double other) {
    (void)axis; // every closed form is symmetric in the roles of y and z
    const double sgn = dir == Direction::plus ? 1.0 : -1.0;
    switch (kind.tag) {
    case MeasureTag::odds_ratio: return std::exp(2.0 * x);
    case MeasureTag::yule_q: return std::tanh(x);
    case MeasureTag::yule_y: return std::tanh(0.5 * x);
    case MeasureTag::corr_r: return 0.0;
    case MeasureTag::mut_inf:
    case MeasureTag::s_mut_inf: return 0.0;
    case MeasureTag::entropy_diag: return entropy_diag_at(x);
    case MeasureTag::d_prime: {
        if (x == 0.0) return 0.0;
        const double num = std::expm1(2.0 * x);
        if (x > 0.0) return num / (std::exp(2.0 * x) + std::exp(x + sgn * other));
        return num / (std::exp(x - sgn * other) + 1.0);
    }
    case MeasureTag::entropy:
    case MeasureTag::hs: {
        // The limit table has a single non-vanishing row or column with
        // cells (1 - p, p), p = 1 / (1 + e^{x +/- other}).
        const double p = detail::logistic(-(x + sgn * other));
        const double h = detail::binary_entropy(p);
        if (kind.tag == MeasureTag::entropy) return h;
        detail::check_hs_weight(kind.n);
        return detail::hs_from_parts(std::tanh(0.5 * x), entropy_diag_at(x), h, kind.n);
    }
    default:
        throw UnsupportedKind("no closed-form margin limit for " +
                              std::string(measure_name(kind.tag)));
    }
}

/// Closed-form limit as x -> +/- infinity at fixed (y, z).
inline double odds_limit(const MeasureKind& kind, double y, double z, Direction dir) {
    const double sgn = dir == Direction::plus ? 1.0 : -1.0;
    switch (kind.tag) {
    case MeasureTag::yule_q:
    case MeasureTag::yule_y:
    case MeasureTag::d_prime:
    case MeasureTag::corr_r:
    case MeasureTag::hs:
        return sgn;
    case MeasureTag::s_mut_inf:
    case MeasureTag::mut_inf: {
        // Limit table is (u, 0; 0, 1 - u) or (0, u; 1 - u, 0), u logistic in y +/- z.
        const double w = y + sgn * z;
        const double mi =
            (detail::softplus(w) - detail::logistic(w) * w) / std::numbers::ln2;
        return kind.tag == MeasureTag::mut_inf ? mi : sgn * mi;
    }
    default:
        throw UnsupportedKind("no closed-form odds-ratio limit for " +
                              std::string(measure_name(kind.tag)));
    }
}

} // namespace assoc2x2

#endif // ASSOC2X2_MEASURES_HPP
