#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "zernike/calculus.hpp"
#include "zernike/log_scaled.hpp"
#include "zernike/poly.hpp"
#include "zernike/projection.hpp"

namespace zernike {

// ---------------------------------------------------------------------------
// Sharpness sequence t^(alpha,l)_j and its closed forms
// ---------------------------------------------------------------------------

// The l+1 term diagonal polynomial
//   t = sum_{k=0}^{l} (-l)_k Gamma(alpha+j+l-k+1)^2 (alpha+2j+2l-2k+1)
//       / [Gamma(k+1) Gamma(j+l-k+1)^2 (alpha+2j+l-k+1)_{l+1}]
//       * P^(alpha)_{j+l-k, j+l-k},
// whose projection residual past degree 2j+2l-1 saturates the projection
// error rate. Coefficients are assembled in log domain.
inline ZernikePoly build_t(double alpha, int l, int j) {
    check_weight_exponent(alpha, "build_t");
    if (l < 1) throw std::invalid_argument("build_t: l must be positive");
    if (j < l) throw std::invalid_argument("build_t: j must be at least l");
    ZernikePoly::CoeffMap out;
    for (int k = 0; k <= l; ++k) {
        const LogScaled gr = gamma_ratio(alpha + j + l - k + 1.0, j + l - k + 1.0);
        LogScaled coef = pochhammer(-static_cast<double>(l), k);
        coef *= gr;
        coef *= gr;
        coef *= LogScaled::from_double(alpha + 2.0 * j + 2.0 * l - 2.0 * k + 1.0);
        coef /= gamma_ratio(k + 1.0, 1.0);
        coef /= pochhammer(alpha + 2.0 * j + l - k + 1.0, l + 1);
        out[ModeIndex{j + l - k, j + l - k}] = coef.to_double();
    }
    return ZernikePoly(alpha, std::move(out));
}

struct SharpnessResidual {
    int N = 0;       // truncation degree 2j+2l-1
    ZernikePoly R;   // t - truncate(t, N); exactly the k=0 term of t
};

inline SharpnessResidual sharpness_residual(double alpha, int l, int j) {
    const ZernikePoly t = build_t(alpha, l, j);
    const int N = 2 * j + 2 * l - 1;
    return {N, residual(t, N)};
}

// ||R||^2 in L^2_{rho^alpha}, closed form.
inline double closed_form_R_L2(double alpha, int l, int j) {
    check_weight_exponent(alpha, "closed_form_R_L2");
    if (l < 1 || j < l) throw std::invalid_argument("closed_form_R_L2: need j >= l >= 1");
    LogScaled v{1, std::log(std::numbers::pi) + 2.0 * log_gamma(alpha + 1.0) -
                       std::log(2.0 * j + 2.0 * l + alpha + 1.0)};
    const LogScaled a = gamma_ratio(alpha + j + l + 1.0, j + l + 1.0);
    const LogScaled b = gamma_ratio(alpha + 2.0 * j + l + 1.0, alpha + 2.0 * j + 2.0 * l + 1.0);
    v *= a;
    v *= a;
    v *= b;
    v *= b;
    return v.to_double();
}

// |R|^2 in the first-order (Cartesian) Sobolev seminorm, closed form built on
// the H^1 seminorm of a single diagonal basis element.
inline double closed_form_R_H1(double alpha, int l, int j) {
    check_weight_exponent(alpha, "closed_form_R_H1");
    if (l < 1 || j < l) throw std::invalid_argument("closed_form_R_H1: need j >= l >= 1");
    LogScaled v{1, std::log(4.0 * std::numbers::pi) + 2.0 * log_gamma(alpha + 1.0)};
    const LogScaled a = gamma_ratio(alpha + j + l + 1.0, j + l + 1.0);
    const LogScaled poch = pochhammer(alpha + 2.0 * j + l + 1.0, l + 1);
    v *= a;
    v *= a;
    v *= LogScaled::from_double(alpha + 2.0 * j + 2.0 * l + 1.0);
    v *= LogScaled::from_double(alpha + 2.0 * j + 2.0 * l + 1.0);
    v *= LogScaled::from_double(static_cast<double>(j + l));
    v *= LogScaled::from_double(alpha + j + l + 1.0);
    v /= LogScaled::from_double(alpha + 1.0);
    v /= poch;
    v /= poch;
    return v.to_double();
}

// l-th order ComplexPair seminorm of t, closed form; exact in that
// convention (only the conversion to Cartesian carries unknown constants for
// l >= 2).
inline double closed_form_t_seminorm_complex(double alpha, int l, int j) {
    check_weight_exponent(alpha, "closed_form_t_seminorm_complex");
    if (l < 1 || j < l)
        throw std::invalid_argument("closed_form_t_seminorm_complex: need j >= l >= 1");
    double sum = 0.0;
    for (int q = 0; q <= l; ++q) {
        sum += (gamma_ratio(alpha + j + l - q + 1.0, j + l - q + 1.0) *
                gamma_ratio(alpha + j + q + 1.0, j + q + 1.0))
                   .to_double();
    }
    const double pref = std::numbers::pi * std::exp(2.0 * log_gamma(alpha + 1.0)) /
                        (2.0 * j + l + alpha + 1.0);
    return pref * sum;
}

// Theoretical projection-error exponent e(l,r): the residual of a degree-N
// truncation of an H^l function measured in H^r decays (grows, for large r)
// like N^{e(l,r)}.
inline double reference_exponent(int l, double r) {
    if (r < 0.0 || r > static_cast<double>(l))
        throw std::invalid_argument("reference_exponent: need 0 <= r <= l");
    return (r <= 1.0) ? 1.5 * r - l : -0.5 + 2.0 * r - l;
}

// ---------------------------------------------------------------------------
// Rate tables
// ---------------------------------------------------------------------------

struct RateTable {
    double alpha = 0.0;
    int l = 1;
    SeminormConvention convention = SeminormConvention::Cartesian;
    bool use_norms = false;  // full H^r norms instead of seminorms

    struct Row {
        int N = 0;
        std::vector<double> rat;                 // r = 0..l
        std::vector<std::optional<double>> egr;  // absent on the first row
    };
    std::vector<Row> rows;  // sorted by strictly increasing N
};

// Default degrees reproducing the reference table: j = 3 + 2^i, i = 1..12,
// which under l = 3 gives N = 15, 19, 27, ..., 8203.
inline std::vector<int> table1_default_j_list() {
    std::vector<int> js;
    for (int i = 1; i <= 12; ++i) js.push_back(3 + (1 << i));
    return js;
}

namespace detail {

inline double seminorm_or_norm_sq(const ZernikePoly& p, int r, SeminormConvention conv,
                                  bool use_norms) {
    if (!use_norms) return sobolev_seminorm_sq(p, r, conv);
    double acc = 0.0;
    for (int k = 0; k <= r; ++k) acc += sobolev_seminorm_sq(p, k, conv);
    return acc;
}

}  // namespace detail

// Seminorm ratios rat_r = |R|_{H^r} / |t|_{H^l} for r = 0..l and the
// experimental growth rates between consecutive truncation degrees. Rows are
// independent and evaluated in parallel; assembly is keyed by position, so
// the result does not depend on completion order.
inline RateTable rate_table(double alpha, int l, const std::vector<int>& j_list,
                            SeminormConvention conv, bool use_norms = false) {
    check_weight_exponent(alpha, "rate_table");
    if (l < 1) throw std::invalid_argument("rate_table: l must be positive");
    if (j_list.empty()) throw std::invalid_argument("rate_table: empty j list");
    for (std::size_t i = 0; i < j_list.size(); ++i) {
        if (j_list[i] < l) throw std::invalid_argument("rate_table: every j must be >= l");
        if (i > 0 && j_list[i] <= j_list[i - 1])
            throw std::invalid_argument("rate_table: j list must be strictly increasing");
    }

    auto compute_row = [alpha, l, conv, use_norms](int j) {
        RateTable::Row row;
        const ZernikePoly t = build_t(alpha, l, j);
        const auto [N, R] = sharpness_residual(alpha, l, j);
        row.N = N;
        const double denom = detail::seminorm_or_norm_sq(t, l, conv, use_norms);
        row.rat.reserve(static_cast<std::size_t>(l) + 1);
        for (int r = 0; r <= l; ++r)
            row.rat.push_back(
                std::sqrt(detail::seminorm_or_norm_sq(R, r, conv, use_norms) / denom));
        row.egr.assign(static_cast<std::size_t>(l) + 1, std::nullopt);
        return row;
    };

    std::vector<std::future<RateTable::Row>> futures;
    futures.reserve(j_list.size());
    for (int j : j_list)
        futures.push_back(std::async(std::launch::async, compute_row, j));

    RateTable table{alpha, l, conv, use_norms, {}};
    table.rows.reserve(j_list.size());
    for (auto& fut : futures) table.rows.push_back(fut.get());

    // egr recomputes exactly from the stored rat values of adjacent rows
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        auto& row = table.rows[i];
        const auto& prev = table.rows[i - 1];
        for (int r = 0; r <= l; ++r) {
            const auto ri = static_cast<std::size_t>(r);
            row.egr[ri] = std::log(row.rat[ri] / prev.rat[ri]) /
                          std::log(static_cast<double>(row.N) / prev.N);
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// Reference values of the published alpha = 9.9, l = 3 table
// ---------------------------------------------------------------------------

struct Table1Row {
    int N;
    double rat[4];
    std::optional<double> egr[4];
};

inline const std::vector<Table1Row>& table1_reference() {
    static const std::vector<Table1Row> rows = {
        {15, {3.11e-05, 1.20e-03, 4.55e-02, 1.61e+00}, {{}, {}, {}, {}}},
        {19, {1.66e-05, 8.06e-04, 4.06e-02, 1.96e+00}, {-2.665, -1.687, -0.480, 0.820}},
        {27, {6.29e-06, 4.44e-04, 3.57e-02, 2.83e+00}, {-2.754, -1.698, -0.369, 1.041}},
        {43, {1.67e-06, 2.02e-04, 3.25e-02, 5.28e+00}, {-2.847, -1.692, -0.205, 1.342}},
        {75, {3.29e-07, 8.02e-05, 3.23e-02, 1.34e+01}, {-2.921, -1.661, -0.008, 1.677}},
        {139, {5.29e-08, 2.96e-05, 3.60e-02, 4.54e+01}, {-2.965, -1.615, 0.174, 1.977}},
        {267, {7.53e-09, 1.06e-05, 4.41e-02, 1.91e+02}, {-2.986, -1.571, 0.311, 2.197}},
        {523, {1.01e-09, 3.77e-06, 5.75e-02, 9.17e+02}, {-2.994, -1.540, 0.397, 2.336}},
        {1035, {1.30e-10, 1.33e-06, 7.80e-02, 4.76e+03}, {-2.997, -1.522, 0.446, 2.414}},
        {2059, {1.65e-11, 4.72e-07, 1.08e-01, 2.58e+04}, {-2.999, -1.511, 0.472, 2.456}},
        {4107, {2.08e-12, 1.67e-07, 1.51e-01, 1.43e+05}, {-2.999, -1.506, 0.486, 2.478}},
        {8203, {2.61e-13, 5.90e-08, 2.12e-01, 7.99e+05}, {-3.000, -1.503, 0.493, 2.489}},
    };
    return rows;
}

struct Table1Comparison {
    bool pass = false;
    double max_rat_rel_err = 0.0;
    double max_egr_abs_err = 0.0;
};

// Matches a computed alpha = 9.9, l = 3 table against the published values:
// every rat to 3 significant figures (relative tolerance 5e-3 after their
// rounding), every egr to +-0.002.
inline Table1Comparison compare_with_table1(const RateTable& table) {
    const auto& ref = table1_reference();
    Table1Comparison cmp;
    if (table.l != 3 || table.rows.size() != ref.size()) return cmp;
    cmp.pass = true;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        if (table.rows[i].N != ref[i].N) return {false, 0.0, 0.0};
        for (int r = 0; r <= 3; ++r) {
            const auto ri = static_cast<std::size_t>(r);
            const double rel =
                std::abs(table.rows[i].rat[ri] - ref[i].rat[ri]) / ref[i].rat[ri];
            cmp.max_rat_rel_err = std::max(cmp.max_rat_rel_err, rel);
            if (rel > 5e-3) cmp.pass = false;
            if (ref[i].egr[ri]) {
                const double de = std::abs(*table.rows[i].egr[ri] - *ref[i].egr[ri]);
                cmp.max_egr_abs_err = std::max(cmp.max_egr_abs_err, de);
                if (de > 2e-3) cmp.pass = false;
            }
        }
    }
    return cmp;
}

// ---------------------------------------------------------------------------
// L^2 projection-rate sweeps
// ---------------------------------------------------------------------------

struct RateSweepReport {
    struct Row {
        int N = 0;
        double error = 0.0;  // ||u - Pi_N u||_{rho^alpha}
    };
    std::vector<Row> rows;
    std::vector<double> local_slopes;  // log-ratio slopes between consecutive rows
    double fitted_slope = 0.0;         // least-squares slope over all rows
    double reference_slope = 0.0;      // -k from the smoothness assumption
};

namespace detail {

inline double fit_log_slope(const std::vector<RateSweepReport::Row>& rows) {
    // least squares on (log N, log err); rows with zero error are skipped
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& row : rows) {
        if (row.error <= 0.0) continue;
        const double x = std::log(static_cast<double>(row.N)), y = std::log(row.error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 2) return 0.0;
    return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

inline void finish_sweep(RateSweepReport& report, int k) {
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        report.local_slopes.push_back(
            std::log(report.rows[i].error / report.rows[i - 1].error) /
            std::log(static_cast<double>(report.rows[i].N) / report.rows[i - 1].N));
    }
    report.fitted_slope = fit_log_slope(report.rows);
    report.reference_slope = -static_cast<double>(k);
}

// I_k(1), modified Bessel function of the first kind at argument 1, by its
// power series; all terms positive.
inline double bessel_i_at_one(int k) {
    double term = std::exp(-k * std::numbers::ln2 - log_gamma(k + 1.0));
    double sum = term;
    for (int jj = 0; jj < 64 && term > 0.0; ++jj) {
        term *= 0.25 / ((jj + 1.0) * (jj + k + 1.0));
        const double next = sum + term;
        if (next == sum) break;
        sum = next;
    }
    return sum;
}

}  // namespace detail

// Exact-arithmetic route for polynomial inputs: the residual norm is the
// Parseval tail, zero to roundoff once N reaches the degree.
inline RateSweepReport l2_rate_sweep(const ZernikePoly& u, int k, const std::vector<int>& N_list) {
    if (N_list.empty()) throw std::invalid_argument("l2_rate_sweep: empty degree list");
    RateSweepReport report;
    for (int N : N_list) report.rows.push_back({N, std::sqrt(l2_norm_sq(residual(u, N)))});
    detail::finish_sweep(report, k);
    return report;
}

// Named smooth functions for sweeps. For exp_x1 at alpha = 0 the
// Fourier-Zernike coefficients have the classical plane-wave closed form
//   u_{m,n} = 2 (m+n+1) I_{m+n+1}(1),
// so residual tails are evaluated coefficient-wise; a quadrature route would
// bottom out near 1e-15 relative and mask the decay past N ~ 12.
inline ZernikePoly exp_x1_expansion(int N) {
    ZernikePoly::CoeffMap out;
    for (int deg = 0; deg <= N; ++deg) {
        const double c = 2.0 * (deg + 1.0) * detail::bessel_i_at_one(deg + 1);
        for (int m = 0; m <= deg; ++m) out[ModeIndex{m, deg - m}] = c;
    }
    return ZernikePoly(0.0, std::move(out));
}

inline Complex exp_x1_value(double x1, double x2) {
    (void)x2;
    return {std::exp(x1), 0.0};
}

inline RateSweepReport l2_rate_sweep_exp_x1(double alpha, int k, const std::vector<int>& N_list) {
    if (alpha != 0.0)
        throw std::invalid_argument("l2_rate_sweep_exp_x1: closed-form expansion requires alpha = 0");
    if (N_list.empty()) throw std::invalid_argument("l2_rate_sweep_exp_x1: empty degree list");
    RateSweepReport report;
    for (int N : N_list) {
        double tail = 0.0;
        for (int deg = N + 1; deg <= N + 256; ++deg) {
            const double c = 2.0 * (deg + 1.0) * detail::bessel_i_at_one(deg + 1);
            const double add = std::numbers::pi * c * c;  // (deg+1 modes) x c^2 h
            if (tail > 0.0 && add < tail * 1e-32) break;
            tail += add;
        }
        report.rows.push_back({N, std::sqrt(tail)});
    }
    detail::finish_sweep(report, k);
    return report;
}

// Quadrature route for a general callable: expand once at the largest degree
// requested, then integrate |u - Pi_N u|^2 with the supplied rule. The rule
// must be exact for products of two degree-max(N) polynomials.
inline RateSweepReport l2_rate_sweep(const std::function<Complex(double, double)>& u, double alpha,
                                     int k, const std::vector<int>& N_list,
                                     const DiskQuadrature& rule) {
    if (N_list.empty()) throw std::invalid_argument("l2_rate_sweep: empty degree list");
    const int maxN = *std::max_element(N_list.begin(), N_list.end());
    if (rule.alpha != alpha || rule.radial_exactness < maxN || rule.angular_exactness < 2 * maxN)
        throw std::invalid_argument("l2_rate_sweep: quadrature rule not adequate for max degree");
    const ZernikePoly expansion = expand_function(u, alpha, maxN, rule);
    RateSweepReport report;
    for (int N : N_list) {
        const ZernikePoly pn = truncate(expansion, N);
        const double err2 = integrate(
                                [&](double x1, double x2) {
                                    const Complex d = u(x1, x2) - evaluate(pn, x1, x2);
                                    return Complex{std::norm(d), 0.0};
                                },
                                rule)
                                .real();
        report.rows.push_back({N, std::sqrt(std::max(0.0, err2))});
    }
    detail::finish_sweep(report, k);
    return report;
}

// ---------------------------------------------------------------------------
// Markov-quotient sweep
// ---------------------------------------------------------------------------

struct MarkovReport {
    double alpha = 0.0;
    int max_degree = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    double max_ratio = 0.0;  // max over trials of ||grad p|| / (N^2 ||p||)
    int argmax_degree = 0;
};

// Statistical probe of the Markov inequality ||grad p|| <= C N^2 ||p||, both
// norms at the same weight rho^alpha. The constant is not explicit in
// closed form; the sweep reports the largest normalized quotient seen over
// seeded random elements of the degree <= max_degree space, drawn with
// standard normal complex coefficients on every mode (so the reported max
// concentrates enough to be seed-stable).
inline MarkovReport markov_sweep(double alpha, int max_degree, int trials, std::uint64_t seed) {
    check_weight_exponent(alpha, "markov_sweep");
    if (max_degree < 1 || trials < 1)
        throw std::invalid_argument("markov_sweep: need positive degree and trial count");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    MarkovReport report{alpha, max_degree, trials, seed, 0.0, 0};
    for (int t = 0; t < trials; ++t) {
        ZernikePoly::CoeffMap coeffs;
        for (int m = 0; m <= max_degree; ++m)
            for (int n = 0; m + n <= max_degree; ++n)
                coeffs[ModeIndex{m, n}] = {gauss(rng), gauss(rng)};
        const ZernikePoly p(alpha, std::move(coeffs));
        const int N = p.degree();
        const double grad2 = sobolev_seminorm_sq(p, 1, SeminormConvention::Cartesian);
        const double ratio = std::sqrt(grad2 / l2_norm_sq(p)) / (static_cast<double>(N) * N);
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.argmax_degree = N;
        }
    }
    return report;
}

}  // namespace zernike
