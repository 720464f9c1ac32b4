#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"

using namespace assoc2x2;
using Catch::Approx;

namespace {

struct Grid {
    std::size_t n;
    std::vector<GridPoint> pts;
    const GridPoint& at(std::size_t i, std::size_t j) const { return pts[i * n + j]; }
};

Grid grid_of(MeasureKind k, double l, double hw, double step) {
    GridSpec spec{k, l, hw, step};
    return {spec.points_per_axis(), evaluate_grid(spec)};
}

// Interior points strictly larger than all eight neighbours.
std::vector<GridPoint> local_maxima(const Grid& g) {
    std::vector<GridPoint> out;
    for (std::size_t i = 1; i + 1 < g.n; ++i) {
        for (std::size_t j = 1; j + 1 < g.n; ++j) {
            const double v = g.at(i, j).value;
            bool is_max = true;
            for (int di = -1; di <= 1 && is_max; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    if ((di || dj) && !(v > g.at(i + di, j + dj).value)) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (is_max) out.push_back(g.at(i, j));
        }
    }
    return out;
}

GridPoint argmax_abs(const Grid& g) {
    GridPoint best = g.pts.front();
    for (const auto& p : g.pts) {
        if (std::fabs(p.value) > std::fabs(best.value)) best = p;
    }
    return best;
}

} // namespace

TEST_CASE("grid layout and CSV output", "[grid]") {
    const GridSpec spec{{MeasureTag::corr_r}, 40.0, 1.0, 0.25};
    CHECK(spec.points_per_axis() == 9);
    std::ostringstream a, b;
    CHECK(emit_grid(spec, a) == 81);
    emit_grid(spec, b);
    CHECK(a.str() == b.str());

    std::istringstream in(a.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "y,z,value");
    std::getline(in, line);
    CHECK(line.rfind("-1,-1,", 0) == 0);
    std::getline(in, line);
    CHECK(line.rfind("-1,-0.75,", 0) == 0);
    std::size_t rows = 2;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 81);

    // Values parse back exactly.
    const auto pts = evaluate_grid(spec);
    std::istringstream again(a.str());
    std::getline(again, line);
    for (const auto& p : pts) {
        std::getline(again, line);
        const auto last = line.rfind(',');
        double v = 0.0;
        REQUIRE(parse_double(std::string_view(line).substr(last + 1), v));
        CHECK(v == p.value);
    }

    const GridSpec big{{MeasureTag::yule_y}, 3.0, 6.0, 0.05};
    CHECK(evaluate_grid(big).size() == 241u * 241u);
}

TEST_CASE("grid spec validation and sink failures", "[grid]") {
    std::ostringstream out;
    CHECK_THROWS_AS(emit_grid({{MeasureTag::yule_y}, 0.0, 1.0, 0.1}, out), std::invalid_argument);
    CHECK_THROWS_AS(emit_grid({{MeasureTag::yule_y}, 2.0, -1.0, 0.1}, out), std::invalid_argument);
    CHECK_THROWS_AS(emit_grid({{MeasureTag::yule_y}, 2.0, 1.0, 0.3}, out), std::invalid_argument);
    CHECK_THROWS_AS(emit_grid({{MeasureTag::yule_y}, 2.0, 1.0, 3.0}, out), std::invalid_argument);

    std::ostringstream broken;
    broken.setstate(std::ios::badbit);
    CHECK_THROWS_AS(emit_grid({{MeasureTag::yule_y}, 2.0, 1.0, 0.5}, broken), std::ios_base::failure);
}

TEST_CASE("Y is constant on each plane", "[grid][shape]") {
    for (double l : {0.2, 1.0, 5.0, 40.0}) {
        const auto g = grid_of({MeasureTag::yule_y}, l, 6.0, 0.5);
        for (const auto& p : g.pts) CHECK(p.value == std::tanh(0.25 * std::log(l)));
    }
}

TEST_CASE("grids are symmetric under marker transposition", "[grid][shape]") {
    for (auto tag : {MeasureTag::corr_r, MeasureTag::s_mut_inf, MeasureTag::entropy}) {
        const auto g = grid_of({tag}, 7.0, 3.0, 0.1);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.n; ++i) {
            for (std::size_t j = 0; j < g.n; ++j) {
                worst = std::max(worst, std::fabs(g.at(i, j).value - g.at(j, i).value));
            }
        }
        INFO(measure_name(tag));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("r and sMutInf peak at the origin", "[grid][shape]") {
    for (double l : {40.0, 1.0 / 40.0}) {
        for (auto tag : {MeasureTag::corr_r, MeasureTag::s_mut_inf}) {
            const auto best = argmax_abs(grid_of({tag}, l, 6.0, 0.05));
            INFO(measure_name(tag) << " L=" << l);
            CHECK(best.y == 0.0);
            CHECK(best.z == 0.0);
        }
    }
}

TEST_CASE("D' has a kink on the diagonal", "[grid][shape]") {
    const double x = 0.5 * std::log(40.0), w = 1.0, h = 1e-6;
    auto f = [&](double c) { return d_prime_coords({x, w + c, w - c}); };
    const double right = (f(h) - f(0)) / h;
    const double left = (f(0) - f(-h)) / h;
    CHECK(std::fabs(right - left) > 1e-3);
    // Smooth away from the diagonal.
    const double r2 = (f(0.5 + h) - f(0.5)) / h;
    const double l2 = (f(0.5) - f(0.5 - h)) / h;
    CHECK(std::fabs(r2 - l2) < 1e-4);
}

TEST_CASE("HS4 maxima split past the threshold", "[grid][shape]") {
    const auto m5 = local_maxima(grid_of({MeasureTag::hs, 4.0}, 5.0, 6.0, 0.05));
    REQUIRE(m5.size() == 1);
    CHECK(m5[0].y == 0.0);
    CHECK(m5[0].z == 0.0);

    const auto m40 = local_maxima(grid_of({MeasureTag::hs, 4.0}, 40.0, 6.0, 0.05));
    REQUIRE(m40.size() == 2);
    for (const auto& m : m40) CHECK(std::hypot(m.y, m.z) > 0.5);
    CHECK(m40[0].y == Approx(m40[1].z));
    CHECK(m40[0].value == Approx(m40[1].value).epsilon(1e-12));

    // Threshold in x is 1 + W0(1/e).
    const double xt = 1 + lambert_w0(std::exp(-1.0));
    CHECK(0.5 * std::log(5.0) < xt);
    CHECK(0.5 * std::log(40.0) > xt);
}

TEST_CASE("measures without a coordinate form go through psi", "[grid]") {
    const MarginCoords c{0.4, -1.0, 2.0};
    CHECK(eval_at({MeasureTag::s_mut_inf}, c) == s_mut_inf(psi(c)));
    CHECK(eval_at({MeasureTag::corr_r}, c) == corr_r_coords(c));
}
