#ifndef ASSOC2X2_TABLE1_HPP
#define ASSOC2X2_TABLE1_HPP

#include <array>
#include <cmath>
#include <ios>
#include <ostream>
#include <vector>

#include "assoc2x2/format.hpp"
#include "assoc2x2/measures.hpp"
#include "assoc2x2/table.hpp"

namespace assoc2x2 {

/// One row of the reference comparison table: a table on the plane of odds
/// ratio `odds_ratio` picked by its margin coordinates, with four measures.
struct ReferenceRow {
    double odds_ratio;
    int row; // 1 diagonal, 2 three equal cells, 3 p01 ~ 1, 4 p00 ~ p01 ~ 1/2, 5 p00 ~ 1
    MarginCoords coords;
    ProbTable table;
    double yule_y;
    double corr_r;
    double d_prime;
    double hs4;
};

inline constexpr std::array<double, 7> kReferenceOddsRatios{1, 2, 5, 10, 20, 50, 100};

/// Coordinates of the five tables at odds-ratio lambda. The boundary-like
/// rows use |y| = 10, which keeps every cell strictly positive.
inline std::array<MarginCoords, 5> reference_coords(double odds_ratio) {
    const double x = 0.5 * std::log(odds_ratio);
    return {MarginCoords{x, 0.0, 0.0}, MarginCoords{x, x, -x}, MarginCoords{x, 10.0, -10.0},
            MarginCoords{x, 10.0, -x}, MarginCoords{x, 10.0, 10.0}};
}

inline std::vector<ReferenceRow> reference_rows() {
    std::vector<ReferenceRow> rows;
    rows.reserve(kReferenceOddsRatios.size() * 5);
    for (double l : kReferenceOddsRatios) {
        const auto coords = reference_coords(l);
        for (int k = 0; k < 5; ++k) {
            const ProbTable t = psi(coords[k]);
            rows.push_back({l, k + 1, coords[k], t, yule_y(t), corr_r(t), d_prime(t), hs(t, 4.0)});
        }
    }
    return rows;
}

/// CSV with every number rounded half away from zero to 3 decimals.
inline void write_reference_table(std::ostream& out) {
    out << "lambda,row,p00,p01,p10,p11,Y,r,Dprime,HS4\n";
    for (const auto& r : reference_rows()) {
        out << format_roundtrip(r.odds_ratio) << ',' << r.row;
        for (double p : r.table.cells()) out << ',' << format_fixed(p, 3);
        for (double v : {r.yule_y, r.corr_r, r.d_prime, r.hs4}) out << ',' << format_fixed(v, 3);
        out << '\n';
    }
    if (!out) throw std::ios_base::failure("table output stream failed");
}

} // namespace assoc2x2

#endif // ASSOC2X2_TABLE1_HPP
