#pragma once

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "zernike/log_scaled.hpp"
#include "zernike/poly.hpp"

namespace zernike {

// Wirtinger operators: Dz is d/dz = (d/dx1 - i d/dx2)/2, Dzstar its conjugate
// (d/dx1 + i d/dx2)/2. Both map the family at parameter alpha to the family
// at alpha+1 with a single-index shift.
enum class WirtingerDirection { Dz, Dzstar };

namespace detail {

// Expansion of one basis element across parameters,
//   P^(alpha)_{m,n} = sum_{k=0}^{min(m,n)} c_k P^(gamma)_{m-k,n-k}.
// c_0 is assembled in log domain; successive terms follow from the exact
// ratio c_{k+1}/c_k, a product of bounded linear factors. When lowering
// (gamma < alpha) every c_k is positive and the c_k sum to 1, so the chain
// cannot overflow and plain summation into the target map is cancellation
// free. Calls visit(k, c_k) for each k.
template <typename Visitor>
void connection_chain(double alpha, double gamma, int m, int n, Visitor&& visit) {
    const int len = std::min(m, n);
    LogScaled c0 = gamma_ratio(alpha + 1.0, gamma + 1.0);
    c0 *= gamma_ratio(gamma + m + 1.0, alpha + m + 1.0);
    c0 *= gamma_ratio(gamma + n + 1.0, alpha + n + 1.0);
    c0 *= gamma_ratio(alpha + m + n + 1.0, gamma + m + n + 2.0);
    c0 *= LogScaled::from_double(gamma + m + n + 1.0);
    double c = c0.to_double();
    for (int k = 0;; ++k) {
        visit(k, c);
        if (k == len) break;
        const double num = (alpha - gamma + k) * (m - k) * (n - k) *
                           (gamma + m + n - 2.0 * k - 1.0) * (gamma + m + n - k + 1.0);
        const double den = (k + 1.0) * (alpha + m + n - k) * (gamma + m - k) *
                           (gamma + n - k) * (gamma + m + n - 2.0 * k + 1.0);
        c *= num / den;
        if (c == 0.0) break;  // (alpha-gamma)_k hit an integer zero; the tail vanishes
    }
}

}  // namespace detail

// Re-expands p in the family of parameter gamma; the result represents the
// same pointwise function. Support grows along diagonals (m-k, n-k).
// Lowering is the numerically safe direction; raising across non-integer
// gaps alternates signs and is flagged cancellation-prone above degree ~200
// (iterated raise_parameter_one is the recommended path there).
inline ZernikePoly change_parameter(const ZernikePoly& p, double gamma) {
    check_weight_exponent(gamma, "change_parameter");
    const double alpha = p.alpha();
    if (gamma == alpha) return p;
    const bool lowering = gamma < alpha;
    ZernikePoly::CoeffMap out;
    for (const auto& [idx, v] : p.coeffs()) {
        detail::connection_chain(alpha, gamma, idx.m, idx.n, [&](int k, double c) {
            assert(!lowering || c > 0.0);
            out[ModeIndex{idx.m - k, idx.n - k}] += v * c;
        });
    }
    (void)lowering;
    return ZernikePoly(gamma, std::move(out));
}

// One-step raise via the two-term identity
//   (m+n+alpha+1) P^(alpha)_{m,n}
//     = (m+alpha+1)(n+alpha+1)/(alpha+1) P^(alpha+1)_{m,n}
//       - m n/(alpha+1) P^(alpha+1)_{m-1,n-1},
// which resolves the recurrence along each diagonal m-n = const explicitly:
// every target coefficient needs only the source modes (m,n) and (m+1,n+1).
inline ZernikePoly raise_parameter_one(const ZernikePoly& p) {
    const double alpha = p.alpha();
    ZernikePoly::CoeffMap out;
    for (const auto& [idx, u] : p.coeffs()) {
        const int m = idx.m, n = idx.n;
        const Complex scaled = u / (m + n + alpha + 1.0);
        out[idx] += scaled * ((m + alpha + 1.0) * (n + alpha + 1.0) / (alpha + 1.0));
        if (m >= 1 && n >= 1)
            out[ModeIndex{m - 1, n - 1}] -= scaled * (static_cast<double>(m) * n / (alpha + 1.0));
    }
    return ZernikePoly(alpha + 1.0, std::move(out));
}

// Same-parameter expansion coefficients of the Wirtinger derivative,
//   (d_zstar u)^(alpha)_{m,n} = (m+n+alpha+1) sum_{l>=0}
//       (m+1)_l/(m+alpha+1)_l (n+1)_{l+1}/(n+alpha+1)_{l+1} u_{m+l,n+1+l},
// and the mirrored d_z variant. The sums are finite for polynomials. Exists
// as an independent route; the production path is wirtinger_derivative
// followed by change_parameter.
inline ZernikePoly derivative_coeffs(const ZernikePoly& p, WirtingerDirection dir) {
    // d_z u o A = d_zstar (u o A) for the reflection A(x) = (x1,-x2), which
    // swaps (m,n) in coefficient space; so only the d_zstar sum is coded.
    if (dir == WirtingerDirection::Dz)
        return reflect(derivative_coeffs(reflect(p), WirtingerDirection::Dzstar));
    const double alpha = p.alpha();
    const int deg = p.degree();
    ZernikePoly::CoeffMap out;
    for (int m = 0; m + 1 <= deg; ++m) {
        for (int n = 0; m + n + 1 <= deg; ++n) {
            Complex acc{0.0, 0.0};
            // factor at l, updated by the exact ratio between consecutive l
            double f = (m + n + alpha + 1.0) * (n + 1.0) / (n + alpha + 1.0);
            for (int l = 0; m + n + 1 + 2 * l <= deg; ++l) {
                acc += f * p.coeff(ModeIndex{m + l, n + 1 + l});
                f *= (m + 1.0 + l) / (m + alpha + 1.0 + l) * (n + 2.0 + l) /
                     (n + alpha + 2.0 + l);
            }
            if (acc != Complex{0.0, 0.0}) out[ModeIndex{m, n}] = acc;
        }
    }
    return ZernikePoly(alpha, std::move(out));
}

}  // namespace zernike
