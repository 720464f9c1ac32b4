#include <catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "test_support.hpp"

using namespace assoc2x2;
using Catch::Approx;

namespace {

const ProbTable kExample = make_table(0.4, 0.1, 0.2, 0.3);

// Plain textbook evaluation, written independently of the library.
double oracle_mi(const ProbTable& t) {
    double s = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double p = t.cell(i, j);
            s += p * std::log2(p / (t.row_margin(i) * t.col_margin(j)));
        }
    }
    return s;
}

double oracle_h(const ProbTable& t) {
    double s = 0.0;
    for (double p : t.cells()) s -= p * std::log2(p);
    return s;
}

ProbTable reference_row(double l, int row) {
    for (const auto& r : reference_rows()) {
        if (r.odds_ratio == l && r.row == row) return r.table;
    }
    throw std::logic_error("no such reference row");
}

} // namespace

TEST_CASE("odds-ratio, Q and Y", "[measures]") {
    const auto mid = make_table(1, 1, 1, 1);
    CHECK(odds_ratio(mid) == 1.0);
    CHECK(yule_q(mid) == 0.0);
    CHECK(yule_y(mid) == 0.0);

    CHECK(odds_ratio(kExample) == Approx(6.0).epsilon(1e-14));
    CHECK(yule_q(kExample) == Approx(5.0 / 7.0).epsilon(1e-14));
    CHECK(yule_y(kExample) == Approx((std::sqrt(6.0) - 1) / (std::sqrt(6.0) + 1)).epsilon(1e-14));
    CHECK(yule_y(kExample) == Approx(0.4202).margin(1e-4));

    CHECK(odds_ratio(diagonal_table(5)) == Approx(5.0).epsilon(1e-14));
    CHECK(yule_y(diagonal_table(5)) == Approx(0.382).margin(5e-4));
}

TEST_CASE("D, D' and r", "[measures]") {
    CHECK(d_raw(kExample) == Approx(0.10).epsilon(1e-13));
    CHECK(d_max(kExample) == Approx(0.2).epsilon(1e-13));
    CHECK(d_prime(kExample) == Approx(0.5).epsilon(1e-13));
    CHECK(corr_r(kExample) == Approx(0.1 / std::sqrt(0.06)).epsilon(1e-13));

    testsupport::Sampler s;
    const auto ind = s.independent_table();
    CHECK(std::fabs(d_raw(ind)) < 1e-15);
    CHECK(std::fabs(d_prime(ind)) < 1e-12);
    CHECK(std::fabs(corr_r(ind)) < 1e-12);

    // D_max for D < 0: min(p0. p.0, p1. p.1).
    const auto neg = symmetry_apply(kExample, Symmetry::swap_rows);
    CHECK(d_prime(neg) == Approx(-d_raw(kExample) /
                                 std::min(neg.row_margin(0) * neg.col_margin(0),
                                          neg.row_margin(1) * neg.col_margin(1))));

    CHECK(d_prime(reference_row(10, 2)) == Approx(0.744).margin(5e-4));
    CHECK(corr_r(reference_row(20, 2)) == Approx(0.452).margin(5e-4));
}

TEST_CASE("mutual information and its signed version", "[measures]") {
    CHECK(s_mut_inf(kExample) == Approx(oracle_mi(kExample)).epsilon(1e-12));
    CHECK(s_mut_inf(kExample) == Approx(0.1245).margin(1e-4));
    CHECK(s_mut_inf(make_table(1, 1, 1, 1)) == 0.0);
    CHECK(s_mut_inf(symmetry_apply(kExample, Symmetry::swap_cols)) ==
          Approx(-s_mut_inf(kExample)).epsilon(1e-12));

    // (1/2, e; e, 1/2) approaches one bit.
    double prev = 0.0;
    for (double eps : {1e-2, 1e-4, 1e-6, 1e-9}) {
        const double v = s_mut_inf(make_table(0.5, eps, eps, 0.5));
        CHECK(v > prev);
        prev = v;
    }
    CHECK(prev == Approx(1.0).margin(1e-6));

    testsupport::Sampler s;
    for (int i = 0; i < 10000; ++i) {
        const auto t = s.table(8.0);
        const double mi = mut_inf(t);
        CHECK(mi >= 0.0);
        CHECK(mi <= 1.0 + 1e-12);
    }
}

TEST_CASE("kappa", "[measures]") {
    CHECK(kappa(make_table(0.45, 0.05, 0.05, 0.45)) == Approx(0.8).epsilon(1e-13));
    CHECK(std::fabs(kappa(make_table(1, 1, 1, 1))) < 1e-15);
    const double po = 0.4 + 0.3;
    const double pe = 0.5 * 0.6 + 0.5 * 0.4;
    CHECK(kappa(kExample) == Approx((po - pe) / (1 - pe)).epsilon(1e-13));
}

TEST_CASE("entropy and diagonal entropy", "[measures]") {
    CHECK(entropy(make_table(1, 1, 1, 1)) == Approx(2.0).epsilon(1e-15));
    CHECK(entropy(kExample) == Approx(oracle_h(kExample)).epsilon(1e-14));
    CHECK(entropy(kExample) == Approx(1.8465).margin(1e-4));

    const double x6 = 0.5 * std::log(6.0);
    // Written out from the diagonal table (a, b; b, a), a = sqrt(L) / (2 (1 + sqrt(L))).
    const double a = std::sqrt(6.0) / (2 * (1 + std::sqrt(6.0)));
    const double b = 0.5 - a;
    const double h6 = -2 * a * std::log2(a) - 2 * b * std::log2(b);
    CHECK(entropy_diag(kExample) == Approx(h6).epsilon(1e-13));
    CHECK(entropy_diag(kExample) == Approx(1.8686).margin(1e-4));
    CHECK(std::fabs(entropy_diag_at(x6) - entropy(psi({x6, 0, 0}))) < 1e-10);
    // Formula with separate log and logistic terms.
    const double alt = 1 + std::log2(1 + std::exp(x6)) - x6 / (std::numbers::ln2 * (std::exp(-x6) + 1));
    CHECK(entropy_diag_at(x6) == Approx(alt).epsilon(1e-13));

    testsupport::Sampler s;
    for (int i = 0; i < 1000; ++i) {
        const auto t = s.table();
        CHECK(entropy(t) <= 2.0);
        CHECK(entropy(t) > 0.0);
        // Depends on the table only through its odds-ratio.
        const auto g = margin_transform(t, std::exp(s.uniform(-3, 3)), std::exp(s.uniform(-3, 3)));
        CHECK(entropy_diag(g) == Approx(entropy_diag(t)).epsilon(1e-11));
    }
}

TEST_CASE("HS_n", "[measures]") {
    const auto d10 = diagonal_table(10);
    CHECK(hs(d10) == Approx(0.519).margin(5e-4));
    CHECK(hs(d10) == Approx(yule_y(d10)).epsilon(1e-12));
    CHECK(hs(d10) == Approx(corr_r(d10)).epsilon(1e-12));
    CHECK(hs(d10) == Approx(d_prime(d10)).epsilon(1e-12));
    CHECK(hs(reference_row(50, 2)) == Approx(0.821).margin(5e-4));

    const double y = yule_y(kExample);
    const double oracle = std::pow(y, std::exp(4.0 * (entropy_diag(kExample) - oracle_h(kExample))));
    CHECK(hs(kExample) == Approx(oracle).epsilon(1e-12));
    CHECK(hs(kExample) == Approx(0.388).margin(5e-4));

    CHECK_THROWS_AS(hs(kExample, -1.0), std::invalid_argument);
    CHECK(hs(make_table(1, 1, 1, 1)) == 0.0);

    testsupport::Sampler s;
    for (int i = 0; i < 1000; ++i) {
        const auto t = s.table();
        CHECK(hs(t, 0.0) == yule_y(t));
        CHECK(std::fabs(hs(t)) < 1.0);
    }
}

TEST_CASE("Y, r and D' coincide on diagonal tables", "[measures]") {
    testsupport::Sampler s;
    for (int i = 0; i < 1000; ++i) {
        const double a = s.uniform(0.001, 1.0);
        const double b = s.uniform(0.001, 1.0);
        const auto t = make_table(a, b, b, a);
        CHECK(std::fabs(yule_y(t) - corr_r(t)) < 1e-12);
        CHECK(std::fabs(yule_y(t) - d_prime(t)) < 1e-12);
        CHECK(std::fabs(yule_y(t) - hs(t)) < 1e-12);
    }
}

TEST_CASE("coordinate forms agree with direct forms", "[measures][coords]") {
    const std::array<MeasureKind, 7> kinds{{{MeasureTag::yule_y},
                                            {MeasureTag::corr_r},
                                            {MeasureTag::d_prime},
                                            {MeasureTag::entropy},
                                            {MeasureTag::entropy_diag},
                                            {MeasureTag::hs, 4.0},
                                            {MeasureTag::hs, 1.5}}};
    testsupport::Sampler s;
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const auto t = s.table(4.0);
        const auto c = theta(t);
        for (const auto& k : kinds) {
            worst = std::max(worst, std::fabs(eval_in_coords(k, c) - evaluate(k, t)));
        }
    }
    CHECK(worst < 1e-10);

    CHECK(eval_in_coords({MeasureTag::yule_y}, {0.5 * std::log(5.0), 3.0, -7.0}) ==
          Approx(0.382).margin(5e-4));
    const MarginCoords c40{0.5 * std::log(40.0), 0, 0};
    CHECK(std::fabs(eval_in_coords({MeasureTag::corr_r}, c40) - corr_r(psi(c40))) < 1e-10);

    // D' is continuous across the branch boundary y = z.
    const double x = 0.7;
    for (double w : {-2.0, 0.0, 1.5}) {
        const double on = d_prime_coords({x, w, w});
        CHECK(d_prime_coords({x, w + 1e-9, w}) == Approx(on).margin(1e-8));
        CHECK(d_prime_coords({x, w - 1e-9, w}) == Approx(on).margin(1e-8));
        CHECK(on == Approx(d_prime(psi({x, w, w}))).margin(1e-12));
    }

    for (auto tag : {MeasureTag::odds_ratio, MeasureTag::yule_q, MeasureTag::d_raw,
                     MeasureTag::mut_inf, MeasureTag::s_mut_inf, MeasureTag::kappa}) {
        CHECK_FALSE(has_coordinate_form(tag));
        CHECK_THROWS_AS(eval_in_coords({tag}, {0.1, 0.2, 0.3}), UnsupportedKind);
    }
}

TEST_CASE("measure names", "[measures]") {
    const char* names[] = {"lambda", "Q",     "Y", "D", "Dprime", "r",
                           "MI",     "sMI", "kappa", "H", "Hdiag", "HS"};
    for (std::size_t k = 0; k < kAllMeasureTags.size(); ++k) {
        CHECK(measure_name(kAllMeasureTags[k]) == names[k]);
        CHECK(parse_measure_tag(names[k]) == kAllMeasureTags[k]);
    }
    CHECK_FALSE(parse_measure_tag("Dprime2"));
    CHECK_THROWS_AS(parse_measure("nope"), std::invalid_argument);
    CHECK(parse_measure("HS", 2.0).n == 2.0);
    CHECK(MeasureKind{MeasureTag::hs, 2.0} != MeasureKind{MeasureTag::hs, 4.0});
    CHECK(MeasureKind{MeasureTag::yule_y, 2.0} == MeasureKind{MeasureTag::yule_y, 4.0});
}
