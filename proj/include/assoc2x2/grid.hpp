#ifndef ASSOC2X2_GRID_HPP
#define ASSOC2X2_GRID_HPP

#include <cmath>
#include <cstddef>
#include <ios>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "assoc2x2/format.hpp"
#include "assoc2x2/grid_axis.hpp"
#include "assoc2x2/measures.hpp"
#include "assoc2x2/table.hpp"

namespace assoc2x2 {

/// A margin weighting function sampled on a square (y, z) grid at the
/// fixed odds-ratio plane x = ln sqrt(odds_ratio).
struct GridSpec {
    MeasureKind measure;
    double odds_ratio = 1.0;
    double half_width = 1.0;
    double step = 0.1;

    double x() const { return 0.5 * std::log(odds_ratio); }

    void validate() const {
        if (!std::isfinite(odds_ratio) || !(odds_ratio > 0.0)) {
            throw std::invalid_argument("grid odds-ratio must be finite and positive");
        }
        (void)grid_intervals(half_width, step);
    }

    std::size_t points_per_axis() const { return grid_intervals(half_width, step) + 1; }
};

struct GridPoint {
    double y;
    double z;
    double value;
};

/// Measure value at margin coordinates, through the closed coordinate form
/// when one exists and through psi otherwise.
inline double eval_at(const MeasureKind& kind, const MarginCoords& c) {
    if (has_coordinate_form(kind.tag)) return eval_in_coords(kind, c);
    return evaluate(kind, psi(c));
}

/// All grid values in y-major order.
inline std::vector<GridPoint> evaluate_grid(const GridSpec& spec) {
    spec.validate();
    const auto axis = grid_axis(spec.half_width, spec.step);
    const double x = spec.x();
    std::vector<GridPoint> out;
    out.reserve(axis.size() * axis.size());
    for (double y : axis) {
        for (double z : axis) {
            out.push_back({y, z, eval_at(spec.measure, MarginCoords{x, y, z})});
        }
    }
    return out;
}

/// Writes `y,z,value` CSV with round-trip number formatting; returns the
/// number of data rows. Throws std::ios_base::failure if the sink fails.
inline std::size_t emit_grid(const GridSpec& spec, std::ostream& sink) {
    const auto points = evaluate_grid(spec);
    sink << "y,z,value\n";
    for (const auto& p : points) {
        sink << format_roundtrip(p.y) << ',' << format_roundtrip(p.z) << ','
             << format_roundtrip(p.value) << '\n';
        if (!sink) throw std::ios_base::failure("grid output stream failed");
    }
    sink.flush();
    if (!sink) throw std::ios_base::failure("grid output stream failed");
    return points.size();
}

} // namespace assoc2x2

#endif // ASSOC2X2_GRID_HPP
