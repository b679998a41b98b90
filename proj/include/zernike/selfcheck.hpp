#pragma once

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "zernike/calculus.hpp"
#include "zernike/experiments.hpp"
#include "zernike/poly.hpp"
#include "zernike/projection.hpp"
#include "zernike/quadrature.hpp"

namespace zernike {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace selfcheck_detail {

inline double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline ZernikePoly random_poly(std::mt19937_64& rng, double alpha, int degree) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ZernikePoly::CoeffMap coeffs;
    for (int m = 0; m <= degree; ++m)
        for (int n = 0; m + n <= degree; ++n) coeffs[ModeIndex{m, n}] = {gauss(rng), gauss(rng)};
    return ZernikePoly(alpha, std::move(coeffs));
}

inline double max_coeff_abs(const ZernikePoly& p) {
    double mx = 0.0;
    for (const auto& [idx, c] : p.coeffs()) mx = std::max(mx, std::abs(c));
    return mx;
}

inline double coeff_map_distance(const ZernikePoly& a, const ZernikePoly& b) {
    double mx = 0.0;
    for (const auto& [idx, c] : a.coeffs()) mx = std::max(mx, std::abs(c - b.coeff(idx)));
    for (const auto& [idx, c] : b.coeffs()) mx = std::max(mx, std::abs(c - a.coeff(idx)));
    return mx;
}

}  // namespace selfcheck_detail

// Criterion 1: the alpha = 9.9, l = 3 default table reproduces the published
// seminorm ratios under at least one convention, which is recorded.
inline CheckResult check_table1_reproduction() {
    namespace d = selfcheck_detail;
    const auto t0 = std::chrono::steady_clock::now();
    const auto js = table1_default_j_list();
    const RateTable cart = rate_table(9.9, 3, js, SeminormConvention::Cartesian);
    const RateTable cpx = rate_table(9.9, 3, js, SeminormConvention::ComplexPair);
    const Table1Comparison ccart = compare_with_table1(cart);
    const Table1Comparison ccpx = compare_with_table1(cpx);
    const double secs = d::elapsed_s(t0);
    std::ostringstream ss;
    ss << "cartesian " << (ccart.pass ? "matches" : "differs")
       << " (max rat rel " << ccart.max_rat_rel_err << ", max egr dev " << ccart.max_egr_abs_err
       << "); complex " << (ccpx.pass ? "matches" : "differs")
       << " (max rat rel " << ccpx.max_rat_rel_err << "); " << secs << " s";
    return {"table1 reproduction (rat to 3 sig figs, egr to 0.002)",
            (ccart.pass || ccpx.pass) && secs < 5.0, ss.str()};
}

// Criterion 2: the three closed forms against their coefficient-space
// counterparts on 20 randomized (alpha, l, j) instances.
inline CheckResult check_closed_forms(std::uint64_t seed = 42) {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> alpha_dist(-0.9, 10.0);
    std::uniform_int_distribution<int> l_dist(1, 4);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double alpha = alpha_dist(rng);
        const int l = l_dist(rng);
        const int j = std::uniform_int_distribution<int>(l, 50)(rng);
        const ZernikePoly t = build_t(alpha, l, j);
        const auto [N, R] = sharpness_residual(alpha, l, j);
        (void)N;
        const double r1 = std::abs(closed_form_R_L2(alpha, l, j) - l2_norm_sq(R)) /
                          closed_form_R_L2(alpha, l, j);
        const double r2 =
            std::abs(closed_form_R_H1(alpha, l, j) -
                     sobolev_seminorm_sq(R, 1, SeminormConvention::Cartesian)) /
            closed_form_R_H1(alpha, l, j);
        const double r3 =
            std::abs(closed_form_t_seminorm_complex(alpha, l, j) -
                     sobolev_seminorm_sq(t, l, SeminormConvention::ComplexPair)) /
            closed_form_t_seminorm_complex(alpha, l, j);
        worst = std::max({worst, r1, r2, r3});
    }
    const double secs = selfcheck_detail::elapsed_s(t0);
    std::ostringstream ss;
    ss << "worst relative deviation " << worst << " over 20 instances; " << secs << " s";
    return {"closed-form identities (1e-9 relative)", worst < 1e-9 && secs < 5.0, ss.str()};
}

// Criterion 3: fitted growth rates over the three largest default rows match
// the proved exponents.
inline CheckResult check_proved_sharpness() {
    struct Case {
        double alpha;
        int l;
    };
    const Case cases[] = {{9.9, 3}, {0.0, 2}, {-0.5, 1}};
    double worst0 = 0.0, worst1 = 0.0;
    for (const auto& c : cases) {
        const RateTable table =
            rate_table(c.alpha, c.l, table1_default_j_list(), SeminormConvention::Cartesian);
        const std::size_t nrows = table.rows.size();
        auto fitted = [&](int r) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (std::size_t i = nrows - 3; i < nrows; ++i) {
                const double x = std::log(static_cast<double>(table.rows[i].N));
                const double y = std::log(table.rows[i].rat[static_cast<std::size_t>(r)]);
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            return (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
        };
        worst0 = std::max(worst0, std::abs(fitted(0) - (-static_cast<double>(c.l))));
        worst1 = std::max(worst1, std::abs(fitted(1) - (1.5 - c.l)));
    }
    std::ostringstream ss;
    ss << "max |egr0 + l| = " << worst0 << " (tol 0.01), max |egr1 - (3/2 - l)| = " << worst1
       << " (tol 0.02)";
    return {"proved rate sharpness (egr0 -> -l, egr1 -> 3/2 - l)", worst0 < 0.01 && worst1 < 0.02,
            ss.str()};
}

// Criterion 4: the disk quadrature Gram matrix of all basis functions of
// degree <= 8 equals diag(h) for four weights.
inline CheckResult check_gram_matrix() {
    const auto t0 = std::chrono::steady_clock::now();
    const double alphas[] = {-0.5, 0.0, 1.0, 9.9};
    double worst_diag = 0.0, worst_off = 0.0;
    for (double alpha : alphas) {
        const DiskQuadrature rule = disk_rule(alpha, 9, 17);
        std::vector<ModeIndex> modes;
        for (int m = 0; m <= 8; ++m)
            for (int n = 0; m + n <= 8; ++n) modes.push_back({m, n});
        double hmax = 0.0;
        for (const auto& idx : modes) hmax = std::max(hmax, mode_norm_sq(alpha, idx.m, idx.n));
        for (std::size_t i = 0; i < modes.size(); ++i) {
            for (std::size_t jj = i; jj < modes.size(); ++jj) {
                const ModeIndex a = modes[i], b = modes[jj];
                const Complex g = integrate(
                    [&](double x1, double x2) {
                        return basis_value(alpha, a.m, a.n, x1, x2) *
                               std::conj(basis_value(alpha, b.m, b.n, x1, x2));
                    },
                    rule);
                if (i == jj) {
                    const double h = mode_norm_sq(alpha, a.m, a.n);
                    worst_diag = std::max(worst_diag, std::abs(g.real() - h) / h);
                    worst_off = std::max(worst_off, std::abs(g.imag()) / hmax);
                } else {
                    worst_off = std::max(worst_off, std::abs(g) / hmax);
                }
            }
        }
    }
    const double secs = selfcheck_detail::elapsed_s(t0);
    std::ostringstream ss;
    ss << "worst diagonal rel " << worst_diag << ", worst off-diagonal/max(h) " << worst_off
       << "; " << secs << " s";
    return {"quadrature Gram matrix equals diag(h) (1e-10)",
            worst_diag < 1e-10 && worst_off < 1e-10 && secs < 10.0, ss.str()};
}

// Criterion 5: Bernstein equality, the derivative-coefficient formula against
// the derivative-plus-reexpansion path, and parameter round trips.
inline CheckResult check_coefficient_identities(std::uint64_t seed = 42) {
    namespace d = selfcheck_detail;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> alpha_dist(-0.9, 10.0);

    double worst_bernstein = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const double alpha = alpha_dist(rng);
        const int deg = std::uniform_int_distribution<int>(1, 12)(rng);
        const ZernikePoly p = d::random_poly(rng, alpha, deg);
        const double grad =
            2.0 * (l2_norm_sq(wirtinger_derivative(p, WirtingerDirection::Dz)) +
                   l2_norm_sq(wirtinger_derivative(p, WirtingerDirection::Dzstar)));
        const double ang = l2_norm_sq(angular_derivative(p));
        double diag = 0.0;
        for (const auto& [idx, c] : p.coeffs())
            diag += eigenvalue(alpha, idx.m, idx.n) * std::norm(c) *
                    mode_norm_sq(alpha, idx.m, idx.n);
        worst_bernstein = std::max(worst_bernstein, std::abs(grad + ang - diag) / diag);
    }

    double worst_dcoef = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double alpha = alpha_dist(rng);
        const int deg = std::uniform_int_distribution<int>(1, 20)(rng);
        const ZernikePoly p = d::random_poly(rng, alpha, deg);
        for (auto dir : {WirtingerDirection::Dz, WirtingerDirection::Dzstar}) {
            const ZernikePoly lhs = derivative_coeffs(p, dir);
            const ZernikePoly rhs = change_parameter(wirtinger_derivative(p, dir), alpha);
            worst_dcoef =
                std::max(worst_dcoef, d::coeff_map_distance(lhs, rhs) / d::max_coeff_abs(rhs));
        }
    }

    double worst_roundtrip = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const double alpha = alpha_dist(rng);
        const int deg = std::uniform_int_distribution<int>(1, 20)(rng);
        const ZernikePoly p = d::random_poly(rng, alpha, deg);
        const ZernikePoly back = change_parameter(change_parameter(p, alpha + 2.0), alpha);
        worst_roundtrip =
            std::max(worst_roundtrip, d::coeff_map_distance(p, back) / d::max_coeff_abs(p));
    }

    std::ostringstream ss;
    ss << "bernstein rel " << worst_bernstein << " (tol 1e-11), derivative-coefficient rel "
       << worst_dcoef << " (tol 1e-10), round trip rel " << worst_roundtrip << " (tol 1e-10)";
    return {"exact coefficient identities",
            worst_bernstein < 1e-11 && worst_dcoef < 1e-10 && worst_roundtrip < 1e-10, ss.str()};
}

// Criterion 6: quadrature of the variational form against lambda * h on all
// basis pairs of degree <= 3.
inline CheckResult check_weak_form_eigenpairs() {
    const double alphas[] = {-0.5, 0.0, 9.9};
    double worst = 0.0;
    for (double alpha : alphas) {
        const DiskQuadrature rule_a = disk_rule(alpha, 8, 17);
        const DiskQuadrature rule_a1 = disk_rule(alpha + 1.0, 8, 17);
        std::vector<ModeIndex> modes;
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; m + n <= 3; ++n) modes.push_back({m, n});
        double scale = 0.0;
        for (const auto& idx : modes)
            scale = std::max(scale, eigenvalue(alpha, idx.m, idx.n) *
                                        mode_norm_sq(alpha, idx.m, idx.n));
        for (const auto& a : modes) {
            const ZernikePoly pa = unit_mode(alpha, a.m, a.n);
            const ZernikePoly d1a = cartesian_derivative(pa, 1);
            const ZernikePoly d2a = cartesian_derivative(pa, 2);
            const ZernikePoly anga = angular_derivative(pa);
            for (const auto& b : modes) {
                const ZernikePoly pb = unit_mode(alpha, b.m, b.n);
                const ZernikePoly d1b = cartesian_derivative(pb, 1);
                const ZernikePoly d2b = cartesian_derivative(pb, 2);
                const ZernikePoly angb = angular_derivative(pb);
                const Complex grad_term = integrate(
                    [&](double x1, double x2) {
                        return evaluate(d1a, x1, x2) * std::conj(evaluate(d1b, x1, x2)) +
                               evaluate(d2a, x1, x2) * std::conj(evaluate(d2b, x1, x2));
                    },
                    rule_a1);
                const Complex ang_term = integrate(
                    [&](double x1, double x2) {
                        return evaluate(anga, x1, x2) * std::conj(evaluate(angb, x1, x2));
                    },
                    rule_a);
                const Complex form = grad_term + ang_term;
                if (a == b) {
                    const double target = eigenvalue(alpha, a.m, a.n) *
                                          mode_norm_sq(alpha, a.m, a.n);
                    if (target == 0.0)
                        worst = std::max(worst, std::abs(form) / scale);
                    else
                        worst = std::max(worst, std::abs(form - target) / target);
                } else {
                    worst = std::max(worst, std::abs(form) / scale);
                }
            }
        }
    }
    std::ostringstream ss;
    ss << "worst deviation " << worst << " (tol 1e-8)";
    return {"weak-form eigenpair check (variational form = lambda h)", worst < 1e-8, ss.str()};
}

// Criterion 7: the Markov quotient max over seeded sweeps is finite and
// stable across seeds.
inline CheckResult check_markov_stability() {
    const double alphas[] = {0.0, 9.9};
    const std::uint64_t seeds[] = {42, 1337, 2718};
    bool pass = true;
    std::ostringstream ss;
    for (double alpha : alphas) {
        double maxima[3];
        double mean = 0.0;
        for (int i = 0; i < 3; ++i) {
            const MarkovReport rep = markov_sweep(alpha, 40, 1000, seeds[i]);
            maxima[i] = rep.max_ratio;
            mean += rep.max_ratio / 3.0;
            if (!std::isfinite(rep.max_ratio)) pass = false;
        }
        double spread = 0.0;
        for (double v : maxima) spread = std::max(spread, std::abs(v - mean) / mean);
        if (spread > 0.10) pass = false;
        ss << "alpha=" << alpha << ": max " << maxima[0] << "/" << maxima[1] << "/" << maxima[2]
           << ", spread " << spread << "; ";
    }
    return {"markov quotient finite and seed-stable (within 10%)", pass, ss.str()};
}

// Criterion 8: projection errors of exp(x1) decay superalgebraically.
inline CheckResult check_projection_rate() {
    const RateSweepReport rep = l2_rate_sweep_exp_x1(0.0, 2, {4, 8, 12, 16});
    bool decreasing = true;
    for (std::size_t i = 1; i < rep.local_slopes.size(); ++i)
        if (!(rep.local_slopes[i] < rep.local_slopes[i - 1])) decreasing = false;
    std::ostringstream ss;
    ss << "local slopes";
    for (double s : rep.local_slopes) ss << ' ' << s;
    return {"superalgebraic L2 projection rate for exp(x1)",
            decreasing && !rep.local_slopes.empty(), ss.str()};
}

inline std::vector<CheckResult> run_acceptance_checks(std::uint64_t seed = 42) {
    return {
        check_table1_reproduction(),
        check_closed_forms(seed),
        check_proved_sharpness(),
        check_gram_matrix(),
        check_coefficient_identities(seed),
        check_weak_form_eigenpairs(),
        check_markov_stability(),
        check_projection_rate(),
    };
}

}  // namespace zernike
