#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "zernike/poly.hpp"
#include "testutil.hpp"

using namespace zernike;
using testutil::rel_err;

TEST_CASE("make_poly construction contract") {
    const ZernikePoly one = make_poly(0.0, {{{0, 0}, 1.0}});
    CHECK(one.degree() == 0);
    CHECK(one.coeff({0, 0}) == Complex{1.0, 0.0});

    const ZernikePoly zero = make_poly(0.0, {});
    CHECK(zero.is_zero());
    CHECK(zero.degree() == 0);  // zero polynomial has degree 0 by convention

    const ZernikePoly p = make_poly(-0.5, {{{2, 1}, {3.0, 1.0}}});
    CHECK(p.degree() == 3);
    CHECK(p.alpha() == -0.5);
    CHECK(p.coeff({2, 1}) == Complex{3.0, 1.0});

    SECTION("zero entries are pruned") {
        const ZernikePoly q = make_poly(0.0, {{{1, 1}, 0.0}, {{0, 1}, 2.0}});
        CHECK(q.mode_count() == 1);
        CHECK(q.degree() == 1);
    }
    SECTION("errors") {
        CHECK_THROWS_AS(make_poly(-1.0, {}), std::domain_error);
        CHECK_THROWS_AS(make_poly(-1.5, {}), std::domain_error);
        CHECK_THROWS_AS(make_poly(0.0, {{{1, 0}, 1.0}, {{1, 0}, 2.0}}), std::invalid_argument);
        CHECK_THROWS_AS(make_poly(0.0, {{{-1, 0}, 1.0}}), std::invalid_argument);
    }
}

TEST_CASE("linear_combine") {
    const ZernikePoly p = make_poly(0.5, {{{1, 0}, 2.0}, {{2, 2}, {0.0, 1.0}}});
    const ZernikePoly q = make_poly(0.5, {{{1, 0}, -1.0}});

    const ZernikePoly same = linear_combine({{1.0, p}, {0.0, q}});
    CHECK(testutil::coeff_distance(same, p) == 0.0);

    const ZernikePoly zero = linear_combine({{1.0, p}, {-1.0, p}});
    CHECK(zero.is_zero());

    const ZernikePoly merged =
        linear_combine({{2.0, unit_mode(0.0, 1, 0)}, {3.0, unit_mode(0.0, 0, 1)}});
    CHECK(merged.coeff({1, 0}) == Complex{2.0, 0.0});
    CHECK(merged.coeff({0, 1}) == Complex{3.0, 0.0});

    const ZernikePoly other_alpha = make_poly(0.25, {{{0, 0}, 1.0}});
    CHECK_THROWS_AS(linear_combine({{1.0, p}, {1.0, other_alpha}}), std::invalid_argument);
}

TEST_CASE("pointwise evaluation") {
    SECTION("constant mode is 1 everywhere") {
        for (double alpha : {-0.5, 0.0, 9.9}) {
            const ZernikePoly c = unit_mode(alpha, 0, 0);
            CHECK(std::abs(evaluate(c, 0.0, 0.0) - 1.0) < 1e-14);
            CHECK(std::abs(evaluate(c, 0.3, -0.7) - 1.0) < 1e-14);
        }
    }
    SECTION("P_{1,0} is x1 + i x2") {
        const ZernikePoly p = unit_mode(2.5, 1, 0);
        for (auto [x, y] : {std::pair{0.2, 0.5}, {-0.6, 0.1}, {0.0, 0.0}}) {
            const Complex v = evaluate(p, x, y);
            CHECK(std::abs(v - Complex{x, y}) < 1e-14);
        }
    }
    SECTION("P^(0)_{1,1}(0.5, 0) from the degree-1 Jacobi closed form") {
        // J^(0,0)_1(2 r^2 - 1) at r = 0.5 is -0.5, prefactor 1
        const ZernikePoly p = unit_mode(0.0, 1, 1);
        CHECK(std::abs(evaluate(p, 0.5, 0.0) - Complex{-0.5, 0.0}) < 1e-14);
    }
}

TEST_CASE("mode_norm_sq") {
    const double pi = std::numbers::pi;
    CHECK(rel_err(mode_norm_sq(0.0, 0, 0), pi) < 1e-14);
    for (double alpha : {-0.5, 0.0, 2.0, 9.9})
        CHECK(rel_err(mode_norm_sq(alpha, 0, 0), pi / (alpha + 1.0)) < 1e-13);
    CHECK(rel_err(mode_norm_sq(0.0, 2, 3), pi / 6.0) < 1e-13);
    for (int m = 0; m <= 6; ++m)
        for (int n = 0; m + n <= 6; ++n)
            CHECK(rel_err(mode_norm_sq(0.0, m, n), pi / (m + n + 1.0)) < 1e-13);
    SECTION("symmetry in (m,n) is exact") {
        for (double alpha : {-0.5, 0.0, 9.9})
            for (int m = 0; m <= 9; ++m)
                for (int n = 0; n <= 9; ++n)
                    CHECK(mode_norm_sq(alpha, m, n) == mode_norm_sq(alpha, n, m));
    }
    CHECK_THROWS_AS(mode_norm_sq(-1.0, 1, 1), std::domain_error);
}

TEST_CASE("eigenvalue") {
    for (double alpha : {-0.5, 0.0, 9.9}) CHECK(eigenvalue(alpha, 0, 0) == 0.0);
    CHECK(eigenvalue(0.0, 1, 0) == Catch::Approx(3.0));
    CHECK(eigenvalue(9.9, 2, 1) == Catch::Approx(74.4));
    CHECK(eigenvalue(0.5, 2, 2) > 0.0);
}

TEST_CASE("evaluation is linear in the coefficients") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> pt(-0.7, 0.7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const ZernikePoly p = testutil::random_poly(rng, 1.5, 6);
        const ZernikePoly q = testutil::random_poly(rng, 1.5, 6);
        const Complex a{gauss(rng), gauss(rng)}, b{gauss(rng), gauss(rng)};
        const ZernikePoly combo = linear_combine({{a, p}, {b, q}});
        const double x = pt(rng), y = pt(rng);
        const Complex lhs = evaluate(combo, x, y);
        const Complex rhs = a * evaluate(p, x, y) + b * evaluate(q, x, y);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("reflect swaps the double index") {
    const ZernikePoly p = make_poly(0.0, {{{2, 0}, {1.0, -2.0}}, {{1, 1}, 3.0}});
    const ZernikePoly r = reflect(p);
    CHECK(r.coeff({0, 2}) == Complex{1.0, -2.0});
    CHECK(r.coeff({1, 1}) == Complex{3.0, 0.0});
    CHECK(r.coeff({2, 0}) == Complex{0.0, 0.0});
}
