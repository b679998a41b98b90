#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "zernike/basis.hpp"
#include "zernike/calculus.hpp"
#include "testutil.hpp"

using namespace zernike;

TEST_CASE("change_parameter is the identity at the same parameter") {
    std::mt19937_64 rng(1);
    const ZernikePoly p = testutil::random_poly(rng, 1.25, 8);
    CHECK(testutil::coeff_distance(change_parameter(p, 1.25), p) == 0.0);
}

TEST_CASE("change_parameter hand-checked expansion") {
    // P^(1)_{1,1} = (3r^2-1)/2 = (3/4) P^(0)_{1,1} + (1/4) P^(0)_{0,0}
    const ZernikePoly low = change_parameter(unit_mode(1.0, 1, 1), 0.0);
    CHECK(std::abs(low.coeff({1, 1}) - Complex{0.75, 0.0}) < 1e-14);
    CHECK(std::abs(low.coeff({0, 0}) - Complex{0.25, 0.0}) < 1e-14);
    CHECK(low.mode_count() == 2);
    CHECK_THROWS_AS(change_parameter(low, -1.0), std::domain_error);
}

TEST_CASE("change_parameter round trip") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> alpha_dist(-0.9, 9.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double alpha = alpha_dist(rng);
        const ZernikePoly p = testutil::random_poly(rng, alpha, 20);
        const ZernikePoly back = change_parameter(change_parameter(p, alpha + 2.0), alpha);
        CHECK(testutil::coeff_distance(p, back) <= 1e-10 * testutil::max_coeff_abs(p));
    }
}

TEST_CASE("change_parameter preserves pointwise values") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> pt(-0.65, 0.65);
    const double params[] = {-0.5, 0.0, 1.0, 9.9};
    for (double alpha : params) {
        for (double gamma : params) {
            const ZernikePoly p = testutil::random_poly(rng, alpha, 50);
            const ZernikePoly q = change_parameter(p, gamma);
            for (int s = 0; s < 20; ++s) {
                const double x = pt(rng), y = pt(rng);
                const Complex a = evaluate(p, x, y), b = evaluate(q, x, y);
                CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
            }
        }
    }
}

TEST_CASE("lowering produces positive connection coefficients") {
    // gamma < alpha: the expansion of a unit mode is a convex combination
    const ZernikePoly low = change_parameter(unit_mode(3.7, 14, 9), 0.4);
    double sum = 0.0;
    for (const auto& [idx, c] : low.coeffs()) {
        CHECK(c.imag() == 0.0);
        CHECK(c.real() > 0.0);
        sum += c.real();
    }
    CHECK(sum == Catch::Approx(1.0).epsilon(1e-12));  // all basis elements are 1 at r=1
}

TEST_CASE("raise_parameter_one") {
    SECTION("constants stay constant") {
        const ZernikePoly c = make_poly(0.5, {{{0, 0}, {2.0, -1.0}}});
        const ZernikePoly up = raise_parameter_one(c);
        CHECK(up.alpha() == 1.5);
        CHECK(std::abs(up.coeff({0, 0}) - Complex{2.0, -1.0}) < 1e-14);
        CHECK(up.mode_count() == 1);
    }
    SECTION("hand-checked two-term expansion") {
        // P^(0)_{1,1} = (4/3) P^(1)_{1,1} - (1/3) P^(1)_{0,0}
        const ZernikePoly up = raise_parameter_one(unit_mode(0.0, 1, 1));
        CHECK(std::abs(up.coeff({1, 1}) - Complex{4.0 / 3.0, 0.0}) < 1e-14);
        CHECK(std::abs(up.coeff({0, 0}) - Complex{-1.0 / 3.0, 0.0}) < 1e-14);
    }
    SECTION("agrees with change_parameter") {
        std::mt19937_64 rng(21);
        std::uniform_real_distribution<double> alpha_dist(-0.9, 9.0);
        for (int trial = 0; trial < 10; ++trial) {
            const double alpha = alpha_dist(rng);
            const ZernikePoly p = testutil::random_poly(rng, alpha, 30);
            const ZernikePoly a = raise_parameter_one(p);
            const ZernikePoly b = change_parameter(p, alpha + 1.0);
            CHECK(testutil::coeff_distance(a, b) <= 1e-11 * testutil::max_coeff_abs(a));
        }
    }
}

TEST_CASE("basis transforms commute with linear combinations") {
    std::mt19937_64 rng(71);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double alpha = 1.3;
    const ZernikePoly p = testutil::random_poly(rng, alpha, 10);
    const ZernikePoly q = testutil::random_poly(rng, alpha, 10);
    const Complex a{gauss(rng), gauss(rng)}, b{gauss(rng), gauss(rng)};
    const ZernikePoly combo = linear_combine({{a, p}, {b, q}});
    struct Op {
        const char* name;
        ZernikePoly (*apply)(const ZernikePoly&);
    };
    const Op ops[] = {
        {"lower", [](const ZernikePoly& u) { return change_parameter(u, 0.2); }},
        {"raise", [](const ZernikePoly& u) { return raise_parameter_one(u); }},
        {"deriv", [](const ZernikePoly& u) {
             return derivative_coeffs(u, WirtingerDirection::Dzstar);
         }},
    };
    for (const auto& op : ops) {
        INFO(op.name);
        const ZernikePoly lhs = op.apply(combo);
        const ZernikePoly rhs = linear_combine({{a, op.apply(p)}, {b, op.apply(q)}});
        CHECK(testutil::coeff_distance(lhs, rhs) <=
              1e-12 * std::max(1.0, testutil::max_coeff_abs(lhs)));
    }
}

TEST_CASE("derivative_coeffs") {
    SECTION("d_zstar kills polynomials supported on n = 0") {
        const ZernikePoly p = make_poly(0.5, {{{3, 0}, 1.0}, {{1, 0}, {0.0, 2.0}}});
        CHECK(derivative_coeffs(p, WirtingerDirection::Dzstar).is_zero());
    }
    SECTION("hand-checked on P^(0)_{1,1}") {
        const ZernikePoly d = derivative_coeffs(unit_mode(0.0, 1, 1), WirtingerDirection::Dzstar);
        CHECK(std::abs(d.coeff({1, 0}) - Complex{2.0, 0.0}) < 1e-14);
        CHECK(d.mode_count() == 1);
    }
    SECTION("matches the derivative-then-lower route") {
        std::mt19937_64 rng(33);
        std::uniform_real_distribution<double> alpha_dist(-0.9, 9.0);
        for (int trial = 0; trial < 10; ++trial) {
            const double alpha = alpha_dist(rng);
            const ZernikePoly p = testutil::random_poly(rng, alpha, 15);
            for (auto dir : {WirtingerDirection::Dz, WirtingerDirection::Dzstar}) {
                const ZernikePoly lhs = derivative_coeffs(p, dir);
                const ZernikePoly rhs = change_parameter(wirtinger_derivative(p, dir), alpha);
                CHECK(testutil::coeff_distance(lhs, rhs) <=
                      1e-10 * std::max(1.0, testutil::max_coeff_abs(rhs)));
            }
        }
    }
    SECTION("reflection symmetry between the two directions") {
        std::mt19937_64 rng(44);
        const ZernikePoly p = testutil::random_poly(rng, 0.75, 12);
        const ZernikePoly lhs = derivative_coeffs(p, WirtingerDirection::Dz);
        const ZernikePoly rhs = reflect(derivative_coeffs(reflect(p), WirtingerDirection::Dzstar));
        CHECK(testutil::coeff_distance(lhs, rhs) == 0.0);
    }
}
