#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "test_support.hpp"

using namespace assoc2x2;
using Catch::Approx;

namespace {

double value_at(const MeasureKind& k, const MarginCoords& c) { return evaluate(k, psi(c)); }

MarginCoords far_point(double x, Axis axis, Direction dir, double other, double far) {
    const double v = dir == Direction::plus ? far : -far;
    return axis == Axis::y ? MarginCoords{x, v, other} : MarginCoords{x, other, v};
}

} // namespace

TEST_CASE("margin limits match far-out evaluation", "[limits]") {
    const std::vector<MeasureKind> kinds{{MeasureTag::odds_ratio}, {MeasureTag::yule_q},
                                         {MeasureTag::yule_y},     {MeasureTag::corr_r},
                                         {MeasureTag::mut_inf},    {MeasureTag::s_mut_inf},
                                         {MeasureTag::entropy_diag}, {MeasureTag::d_prime},
                                         {MeasureTag::entropy},    {MeasureTag::hs, 4.0},
                                         {MeasureTag::hs, 1.0}};
    testsupport::Sampler s;
    for (int i = 0; i < 300; ++i) {
        const double x = s.uniform(-3, 3);
        const double other = s.uniform(-3, 3);
        for (Axis axis : {Axis::y, Axis::z}) {
            for (Direction dir : {Direction::plus, Direction::minus}) {
                const auto c = far_point(x, axis, dir, other, 60.0);
                for (const auto& k : kinds) {
                    const double lim = margin_limit(k, x, axis, dir, other);
                    INFO(measure_name(k.tag) << " x=" << x << " other=" << other);
                    CHECK(lim == Approx(value_at(k, c)).margin(1e-6));
                }
            }
        }
    }
    CHECK_THROWS_AS(margin_limit({MeasureTag::kappa}, 1.0, Axis::y, Direction::plus, 0.0),
                    UnsupportedKind);
}

TEST_CASE("margin limit examples", "[limits]") {
    const double x2 = 0.5 * std::log(2.0);
    CHECK(margin_limit({MeasureTag::corr_r}, 0.7, Axis::y, Direction::plus, -4.0) == 0.0);
    const double dp = margin_limit({MeasureTag::d_prime}, x2, Axis::y, Direction::plus, -x2);
    CHECK(dp == Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(dp == Approx((std::exp(2 * x2) - 1) / (std::exp(2 * x2) + std::exp(x2 - x2))));
}

TEST_CASE("HS limits down-weight junk tables", "[limits]") {
    testsupport::Sampler s;
    for (int i = 0; i < 1000; ++i) {
        double x = s.uniform(-4, 4);
        if (std::fabs(x) < 1e-3) continue;
        const double other = s.uniform(-5, 5);
        const double lim = margin_limit({MeasureTag::hs, 4.0}, x, Axis::z, Direction::minus, other);
        CHECK(std::fabs(lim) < std::fabs(std::tanh(0.5 * x)));
        CHECK(lim * x >= 0.0);
    }
    // At x = 0 both sides vanish.
    CHECK(margin_limit({MeasureTag::hs, 4.0}, 0.0, Axis::y, Direction::plus, 1.0) == 0.0);
}

TEST_CASE("odds-ratio limits", "[limits]") {
    testsupport::Sampler s;
    for (int i = 0; i < 200; ++i) {
        const double y = s.uniform(-3, 3);
        const double z = s.uniform(-3, 3);
        for (Direction dir : {Direction::plus, Direction::minus}) {
            const MarginCoords c{dir == Direction::plus ? 40.0 : -40.0, y, z};
            for (auto tag : {MeasureTag::yule_q, MeasureTag::yule_y, MeasureTag::d_prime,
                             MeasureTag::corr_r, MeasureTag::hs, MeasureTag::s_mut_inf,
                             MeasureTag::mut_inf}) {
                const MeasureKind k{tag, 4.0};
                INFO(measure_name(tag) << " y=" << y << " z=" << z);
                CHECK(odds_limit(k, y, z, dir) == Approx(value_at(k, c)).margin(1e-6));
            }
        }
    }
    // Independent oracle for sMutInf at x -> +inf: binary entropy of the
    // diagonal split e^{y+z} : 1.
    const double y = 0.4, z = -1.1;
    const double u = std::exp(y + z) / (1 + std::exp(y + z));
    const double h = -u * std::log2(u) - (1 - u) * std::log2(1 - u);
    CHECK(odds_limit({MeasureTag::s_mut_inf}, y, z, Direction::plus) == Approx(h).epsilon(1e-13));
    CHECK_THROWS_AS(odds_limit({MeasureTag::entropy}, 0, 0, Direction::plus), UnsupportedKind);
}
