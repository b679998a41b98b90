#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "zernike/basis.hpp"
#include "zernike/poly.hpp"

namespace zernike {

// Which family of k-th order seminorms to use. Cartesian is the canonical
// definition, sum over k1+k2=k of ||d1^k1 d2^k2 u||^2; ComplexPair replaces
// the axis derivatives by d_z^k1 d_zstar^k2. At k=1 the Cartesian value is
// exactly twice the ComplexPair one; for k >= 2 the two are equivalent only
// up to k-dependent constants.
enum class SeminormConvention { Cartesian, ComplexPair };

// d_zstar P^(alpha)_{m,n} = (m+alpha+1) n/(alpha+1) P^(alpha+1)_{m,n-1}
// d_z     P^(alpha)_{m,n} = m (n+alpha+1)/(alpha+1) P^(alpha+1)_{m-1,n}
// Modes whose decremented index would go negative drop out.
inline ZernikePoly wirtinger_derivative(const ZernikePoly& p, WirtingerDirection dir) {
    const double alpha = p.alpha();
    ZernikePoly::CoeffMap out;
    for (const auto& [idx, c] : p.coeffs()) {
        const int m = idx.m, n = idx.n;
        if (dir == WirtingerDirection::Dzstar) {
            if (n >= 1) out[ModeIndex{m, n - 1}] += c * ((m + alpha + 1.0) * n / (alpha + 1.0));
        } else {
            if (m >= 1) out[ModeIndex{m - 1, n}] += c * (m * (n + alpha + 1.0) / (alpha + 1.0));
        }
    }
    return ZernikePoly(alpha + 1.0, std::move(out));
}

// d1 = dz + dzstar, d2 = i (dz - dzstar); result lives at parameter alpha+1.
inline ZernikePoly cartesian_derivative(const ZernikePoly& p, int axis) {
    if (axis != 1 && axis != 2) throw std::invalid_argument("cartesian_derivative: axis must be 1 or 2");
    const ZernikePoly dz = wirtinger_derivative(p, WirtingerDirection::Dz);
    const ZernikePoly dzs = wirtinger_derivative(p, WirtingerDirection::Dzstar);
    if (axis == 1) return linear_combine({{{1.0, 0.0}, dz}, {{1.0, 0.0}, dzs}});
    return linear_combine({{{0.0, 1.0}, dz}, {{0.0, -1.0}, dzs}});
}

// x2 d1 - x1 d2 = -d_theta; diagonal in this basis, multiplying the (m,n)
// coefficient by -i(m-n). Only its squared norm enters any formula here.
inline ZernikePoly angular_derivative(const ZernikePoly& p) {
    ZernikePoly::CoeffMap out;
    for (const auto& [idx, c] : p.coeffs()) {
        const double k = idx.m - idx.n;
        if (k != 0.0) out[idx] = c * Complex{0.0, -k};
    }
    return ZernikePoly(p.alpha(), std::move(out));
}

// Diagonal action of the Sturm-Liouville operator L^(alpha).
inline ZernikePoly apply_operator_L(const ZernikePoly& p) {
    ZernikePoly::CoeffMap out;
    for (const auto& [idx, c] : p.coeffs()) {
        const double lam = eigenvalue(p.alpha(), idx.m, idx.n);
        if (lam != 0.0) out[idx] = c * lam;
    }
    return ZernikePoly(p.alpha(), std::move(out));
}

// <p, q> in L^2_{rho^weight_exp}: both arguments are re-expanded at the
// weight's parameter, after which the inner product is the diagonal
// Parseval sum over coefficients.
inline Complex l2_inner_product(const ZernikePoly& p, const ZernikePoly& q, double weight_exp) {
    if (p.alpha() != q.alpha())
        throw std::invalid_argument("l2_inner_product: mismatched weight parameters");
    check_weight_exponent(weight_exp, "l2_inner_product");
    const ZernikePoly pw = change_parameter(p, weight_exp);
    const ZernikePoly qw = change_parameter(q, weight_exp);
    Complex acc{0.0, 0.0};
    for (const auto& [idx, c] : pw.coeffs()) {
        const Complex d = qw.coeff(idx);
        if (d != Complex{0.0, 0.0})
            acc += c * std::conj(d) * mode_norm_sq(weight_exp, idx.m, idx.n);
    }
    return acc;
}

// ||p||^2 in L^2_{rho^weight_exp}; all-positive Parseval sum after
// re-expansion.
inline double l2_norm_sq(const ZernikePoly& p, double weight_exp) {
    check_weight_exponent(weight_exp, "l2_norm_sq");
    const ZernikePoly pw =
        (weight_exp == p.alpha()) ? p : change_parameter(p, weight_exp);
    double acc = 0.0;
    for (const auto& [idx, c] : pw.coeffs())
        acc += std::norm(c) * mode_norm_sq(weight_exp, idx.m, idx.n);
    return acc;
}

inline double l2_norm_sq(const ZernikePoly& p) { return l2_norm_sq(p, p.alpha()); }

// |p|^2_{H^k_{rho^alpha}} with alpha = p.alpha(). Every derivative norm is
// taken back at the polynomial's own weight, so each multi-index term needs
// a k-step re-expansion. k=1 Cartesian goes through |grad u|^2 =
// 2(|dz u|^2 + |dzstar u|^2); higher orders evaluate each multi-index
// separately.
inline double sobolev_seminorm_sq(const ZernikePoly& p, int k, SeminormConvention conv) {
    if (k < 0) throw std::invalid_argument("sobolev_seminorm_sq: negative order");
    if (k == 0) return l2_norm_sq(p);
    const double alpha = p.alpha();
    if (k == 1 && conv == SeminormConvention::Cartesian) {
        return 2.0 * (l2_norm_sq(wirtinger_derivative(p, WirtingerDirection::Dz), alpha) +
                      l2_norm_sq(wirtinger_derivative(p, WirtingerDirection::Dzstar), alpha));
    }
    double total = 0.0;
    for (int k1 = 0; k1 <= k; ++k1) {
        const int k2 = k - k1;
        ZernikePoly q = p;
        if (conv == SeminormConvention::Cartesian) {
            for (int i = 0; i < k1; ++i) q = cartesian_derivative(q, 1);
            for (int i = 0; i < k2; ++i) q = cartesian_derivative(q, 2);
        } else {
            for (int i = 0; i < k1; ++i) q = wirtinger_derivative(q, WirtingerDirection::Dz);
            for (int i = 0; i < k2; ++i) q = wirtinger_derivative(q, WirtingerDirection::Dzstar);
        }
        total += l2_norm_sq(q, alpha);
    }
    return total;
}

// Squared WZ norm, directly in Parseval form: sum (1 + lambda) |u|^2 h.
inline double wz_norm_sq(const ZernikePoly& p) {
    double acc = 0.0;
    for (const auto& [idx, c] : p.coeffs()) {
        acc += (1.0 + eigenvalue(p.alpha(), idx.m, idx.n)) * std::norm(c) *
               mode_norm_sq(p.alpha(), idx.m, idx.n);
    }
    return acc;
}

}  // namespace zernike
