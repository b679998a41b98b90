#pragma once

#include <cmath>
#include <complex>
#include <compare>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "zernike/jacobi.hpp"
#include "zernike/log_scaled.hpp"

namespace zernike {

using Complex = std::complex<double>;

// Double index (m,n) of a disk polynomial P^(alpha)_{m,n}. Total degree is
// m+n, angular order m-n, radial index min(m,n). Negative indices are
// rejected on construction; the basis is identically zero there.
struct ModeIndex {
    int m = 0;
    int n = 0;

    friend auto operator<=>(const ModeIndex&, const ModeIndex&) = default;

    int degree() const { return m + n; }
    int angular_order() const { return m - n; }
    int radial_index() const { return m < n ? m : n; }
};

inline void check_weight_exponent(double alpha, const char* where) {
    if (!(alpha > -1.0)) {
        throw std::domain_error(std::string(where) + ": weight exponent must exceed -1");
    }
}

// A finite expansion sum_{(m,n)} c_{m,n} P^(alpha)_{m,n} stored as a sparse
// coefficient map tagged with its weight parameter. Immutable after
// construction; all operations on it are pure functions returning new values.
class ZernikePoly {
public:
    using CoeffMap = std::map<ModeIndex, Complex>;

    ZernikePoly() = default;

    explicit ZernikePoly(double alpha) : alpha_(alpha) {
        check_weight_exponent(alpha, "ZernikePoly");
    }

    ZernikePoly(double alpha, CoeffMap coeffs) : alpha_(alpha), coeffs_(std::move(coeffs)) {
        check_weight_exponent(alpha, "ZernikePoly");
        for (auto it = coeffs_.begin(); it != coeffs_.end();) {
            if (it->first.m < 0 || it->first.n < 0)
                throw std::invalid_argument("ZernikePoly: negative mode index");
            if (it->second == Complex{0.0, 0.0}) {
                it = coeffs_.erase(it);
            } else {
                ++it;
            }
        }
    }

    double alpha() const { return alpha_; }
    const CoeffMap& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    std::size_t mode_count() const { return coeffs_.size(); }

    // The zero polynomial has degree 0 by convention.
    int degree() const {
        int d = 0;
        for (const auto& [idx, c] : coeffs_) d = std::max(d, idx.degree());
        return d;
    }

    Complex coeff(ModeIndex idx) const {
        auto it = coeffs_.find(idx);
        return it == coeffs_.end() ? Complex{0.0, 0.0} : it->second;
    }

private:
    double alpha_ = 0.0;
    CoeffMap coeffs_;
};

inline ZernikePoly make_poly(double alpha,
                             const std::vector<std::pair<ModeIndex, Complex>>& entries) {
    check_weight_exponent(alpha, "make_poly");
    ZernikePoly::CoeffMap map;
    for (const auto& [idx, c] : entries) {
        if (idx.m < 0 || idx.n < 0)
            throw std::invalid_argument("make_poly: negative mode index");
        if (!map.emplace(idx, c).second)
            throw std::invalid_argument("make_poly: duplicate mode index");
    }
    return ZernikePoly(alpha, std::move(map));
}

// The basis element P^(alpha)_{m,n} itself (unit coefficient).
inline ZernikePoly unit_mode(double alpha, int m, int n) {
    return make_poly(alpha, {{ModeIndex{m, n}, Complex{1.0, 0.0}}});
}

// Coefficient-wise sum of scaled polynomials, all sharing the same parameter.
inline ZernikePoly linear_combine(const std::vector<std::pair<Complex, ZernikePoly>>& terms) {
    if (terms.empty()) return ZernikePoly(0.0);
    const double alpha = terms.front().second.alpha();
    ZernikePoly::CoeffMap map;
    for (const auto& [weight, poly] : terms) {
        if (poly.alpha() != alpha)
            throw std::invalid_argument("linear_combine: mixed weight parameters");
        if (weight == Complex{0.0, 0.0}) continue;
        for (const auto& [idx, c] : poly.coeffs()) map[idx] += weight * c;
    }
    return ZernikePoly(alpha, std::move(map));
}

// (m,n) -> (n,m). The reflection (x1,x2) -> (x1,-x2) acts on the basis as
// P^(alpha)_{m,n} o A = P^(alpha)_{n,m}.
inline ZernikePoly reflect(const ZernikePoly& p) {
    ZernikePoly::CoeffMap map;
    for (const auto& [idx, c] : p.coeffs()) map[ModeIndex{idx.n, idx.m}] = c;
    return ZernikePoly(p.alpha(), std::move(map));
}

// Squared L^2_{rho^alpha} norm of the basis element,
//   h^(alpha)_{m,n} = pi Gamma(alpha+1)^2 / (m+n+alpha+1)
//                     * Gamma(m+1)/Gamma(m+alpha+1) * Gamma(n+1)/Gamma(n+alpha+1),
// assembled in log domain.
inline double mode_norm_sq(double alpha, int m, int n) {
    check_weight_exponent(alpha, "mode_norm_sq");
    if (m < 0 || n < 0) throw std::invalid_argument("mode_norm_sq: negative mode index");
    // the (m,n) and (n,m) factors are combined commutatively so the symmetry
    // of h holds bitwise, not just up to rounding
    const double base = std::log(std::numbers::pi) + 2.0 * log_gamma(alpha + 1.0) -
                        std::log(m + n + alpha + 1.0);
    const double gm = gamma_ratio(m + 1.0, m + alpha + 1.0).logmag;
    const double gn = gamma_ratio(n + 1.0, n + alpha + 1.0).logmag;
    return std::exp(base + (gm + gn));
}

// Sturm-Liouville eigenvalue lambda^(alpha)_{m,n} = (m+n)(m+n+2+2 alpha);
// depends on the mode only through its total degree.
inline double eigenvalue(double alpha, int m, int n) {
    check_weight_exponent(alpha, "eigenvalue");
    if (m < 0 || n < 0) throw std::invalid_argument("eigenvalue: negative mode index");
    const double deg = m + n;
    return deg * (deg + 2.0 + 2.0 * alpha);
}

// Pointwise value of P^(alpha)_{m,n} at Cartesian (x1,x2):
//   Gamma(s+1)Gamma(alpha+1)/Gamma(s+alpha+1) r^{|m-n|} e^{i(m-n)theta}
//     J^(alpha,|m-n|)_s(2r^2-1),     s = min(m,n).
// At the origin theta is taken as 0; every mode with m != n vanishes there.
inline Complex basis_value(double alpha, int m, int n, double x1, double x2) {
    const int s = std::min(m, n);
    const int mu = std::abs(m - n);
    const double r2 = x1 * x1 + x2 * x2;
    const double r = std::sqrt(r2);
    const double theta = (r == 0.0) ? 0.0 : std::atan2(x2, x1);
    const double pref =
        (gamma_ratio(s + 1.0, s + alpha + 1.0) * LogScaled{1, log_gamma(alpha + 1.0)})
            .to_double();
    const double radial = std::pow(r, mu) * jacobi_eval(s, alpha, mu, 2.0 * r2 - 1.0);
    return pref * radial * std::polar(1.0, (m - n) * theta);
}

// Evaluation outside the closed disk is permitted but is extrapolation; the
// basis is only orthogonal inside.
inline Complex evaluate(const ZernikePoly& p, double x1, double x2) {
    Complex acc{0.0, 0.0};
    for (const auto& [idx, c] : p.coeffs()) acc += c * basis_value(p.alpha(), idx.m, idx.n, x1, x2);
    return acc;
}

}  // namespace zernike
