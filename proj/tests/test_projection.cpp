#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "zernike/basis.hpp"
#include "zernike/calculus.hpp"
#include "zernike/projection.hpp"
#include "testutil.hpp"

using namespace zernike;
using testutil::rel_err;

TEST_CASE("truncate keeps exactly total degree <= N") {
    const ZernikePoly p = make_poly(0.0, {{{0, 0}, {2.0, 0.0}}, {{2, 1}, {1.0, -1.0}}});
    SECTION("no-op past the degree") {
        CHECK(testutil::coeff_distance(truncate(p, 3), p) == 0.0);
        CHECK(testutil::coeff_distance(truncate(p, 10), p) == 0.0);
    }
    SECTION("N = 0 keeps the constant") {
        const ZernikePoly t = truncate(p, 0);
        CHECK(t.mode_count() == 1);
        CHECK(t.coeff({0, 0}) == Complex{2.0, 0.0});
    }
    SECTION("idempotent") {
        const ZernikePoly t = truncate(p, 2);
        CHECK(testutil::coeff_distance(truncate(t, 2), t) == 0.0);
    }
}

TEST_CASE("Parseval tail identity and split orthogonality") {
    std::mt19937_64 rng(3);
    const double alpha = 0.8;
    const ZernikePoly p = testutil::random_poly(rng, alpha, 12);
    for (int N : {0, 3, 7, 12}) {
        const ZernikePoly head = truncate(p, N);
        const ZernikePoly tail = residual(p, N);
        // ||p - Pi_N p||^2 = sum_{m+n>N} |u|^2 h
        double tail_sum = 0.0;
        for (const auto& [idx, c] : p.coeffs())
            if (idx.degree() > N)
                tail_sum += std::norm(c) * mode_norm_sq(alpha, idx.m, idx.n);
        if (tail_sum == 0.0)
            CHECK(l2_norm_sq(tail) == 0.0);  // N reached the degree of p
        else
            CHECK(rel_err(l2_norm_sq(tail), tail_sum) < 1e-14);
        // orthogonality of the split is exact in coefficient space
        CHECK(std::abs(l2_inner_product(head, tail, alpha)) == 0.0);
        // projector contraction
        CHECK(l2_norm_sq(head) <= l2_norm_sq(p) * (1.0 + 1e-15));
        for (const auto& [idx, c] : tail.coeffs()) CHECK(idx.degree() > N);
    }
}

TEST_CASE("expand_function recovers polynomial coefficients") {
    const double alpha = 0.5;
    const DiskQuadrature rule = disk_rule(alpha, 4, 9);
    const auto f = [&](double x, double y) { return basis_value(alpha, 2, 1, x, y); };
    SECTION("exact at N = 3") {
        const ZernikePoly e = expand_function(f, alpha, 3, rule);
        CHECK(std::abs(e.coeff({2, 1}) - Complex{1.0, 0.0}) < 1e-12);
        for (const auto& [idx, c] : e.coeffs())
            if (!(idx == ModeIndex{2, 1})) CHECK(std::abs(c) < 1e-12);
    }
    SECTION("degree-3 mode invisible at N = 2") {
        const ZernikePoly e = expand_function(f, alpha, 2, rule);
        CHECK(testutil::max_coeff_abs(e) < 1e-12);
    }
    SECTION("insufficient exactness is a precondition error") {
        CHECK_THROWS_AS(expand_function(f, alpha, 5, rule), std::invalid_argument);
        const DiskQuadrature wrong_weight = disk_rule(0.25, 8, 16);
        CHECK_THROWS_AS(expand_function(f, alpha, 3, wrong_weight), std::invalid_argument);
    }
}

TEST_CASE("random polynomial round trip through quadrature expansion") {
    std::mt19937_64 rng(11);
    const double alpha = 1.5;
    const ZernikePoly p = testutil::random_poly(rng, alpha, 6);
    const DiskQuadrature rule = disk_rule(alpha, 8, 14);
    const ZernikePoly e = expand_function(
        [&](double x, double y) { return evaluate(p, x, y); }, alpha, 6, rule);
    CHECK(testutil::coeff_distance(p, e) < 1e-11 * testutil::max_coeff_abs(p));
}

TEST_CASE("quadrature residuals of exp(x1) decay faster than any fixed power") {
    // residual norms by quadrature across N in {4,6,8,10}; every local
    // log-slope is more negative than the previous one
    const double alpha = 0.0;
    const DiskQuadrature rule = disk_rule(alpha, 24, 48);
    const auto f = [](double x, double) { return Complex{std::exp(x), 0.0}; };
    const ZernikePoly expansion = expand_function(f, alpha, 10, rule);
    double prev_err = 0.0, prev_slope = 0.0;
    int prev_n = 0;
    for (int N : {4, 6, 8, 10}) {
        const ZernikePoly pn = truncate(expansion, N);
        const double err = std::sqrt(integrate(
                                         [&](double x, double y) {
                                             return Complex{
                                                 std::norm(f(x, y) - evaluate(pn, x, y)), 0.0};
                                         },
                                         rule)
                                         .real());
        if (prev_n > 0) {
            const double slope =
                std::log(err / prev_err) / std::log(static_cast<double>(N) / prev_n);
            if (prev_slope != 0.0) CHECK(slope < prev_slope);
            prev_slope = slope;
        }
        prev_err = err;
        prev_n = N;
    }
}

TEST_CASE("projection-derivative commutator matches the telescoped diagonal sums") {
    // || Pi_N (d_zstar p) - d_zstar Pi_N(p) ||^2_{rho^alpha} rearranges into
    // weighted sums over the degree-N and degree-(N+1) coefficients of the
    // derivative's same-parameter expansion.
    std::mt19937_64 rng(19);
    for (double alpha : {-0.5, 0.3, 4.2}) {
        const ZernikePoly p = testutil::random_poly(rng, alpha, 25);
        const ZernikePoly d = change_parameter(wirtinger_derivative(p, WirtingerDirection::Dzstar),
                                               alpha);
        for (int N : {6, 11, 19}) {
            const ZernikePoly lhs_poly = linear_combine(
                {{1.0, truncate(d, N)},
                 {-1.0, change_parameter(
                            wirtinger_derivative(truncate(p, N), WirtingerDirection::Dzstar),
                            alpha)}});
            const double direct = l2_norm_sq(lhs_poly);
            double even = 0.0;
            for (int i = 0; i <= N; ++i)
                even += (i + alpha + 1.0) * (N - i + alpha + 1.0) /
                        ((alpha + 1.0) * (N + alpha + 1.0)) *
                        std::norm(d.coeff({i, N - i})) * mode_norm_sq(alpha, i, N - i);
            double odd = 0.0;
            for (int i = 1; i <= N; ++i)
                odd += i * (N + 1.0 - i) / ((alpha + 1.0) * (N + alpha + 2.0)) *
                       std::norm(d.coeff({i, N + 1 - i})) * mode_norm_sq(alpha, i, N + 1 - i);
            CHECK(rel_err(direct, even + odd) < 1e-9);
        }
    }
}
