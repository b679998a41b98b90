#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

#include "zernike/poly.hpp"
#include "zernike/quadrature.hpp"

namespace zernike {

// The L^2_{rho^alpha}-orthogonal projector onto total degree <= N is
// coefficient truncation: keep exactly the modes with m+n <= N.
inline ZernikePoly truncate(const ZernikePoly& p, int N) {
    if (N < 0) throw std::invalid_argument("truncate: negative degree");
    ZernikePoly::CoeffMap out;
    for (const auto& [idx, c] : p.coeffs())
        if (idx.degree() <= N) out[idx] = c;
    return ZernikePoly(p.alpha(), std::move(out));
}

// p - truncate(p, N); supported on m+n > N.
inline ZernikePoly residual(const ZernikePoly& p, int N) {
    if (N < 0) throw std::invalid_argument("residual: negative degree");
    ZernikePoly::CoeffMap out;
    for (const auto& [idx, c] : p.coeffs())
        if (idx.degree() > N) out[idx] = c;
    return ZernikePoly(p.alpha(), std::move(out));
}

// Quadrature expansion u_{m,n} = <f, P_{m,n}> / h_{m,n} over all modes with
// m+n <= N; equals the projection of f exactly (to roundoff) when f is a
// polynomial of degree <= N. The rule's exactness must cover products of two
// degree-N polynomials, and its weight must match alpha; the caller owns
// that responsibility, checked here.
inline ZernikePoly expand_function(const std::function<Complex(double, double)>& f, double alpha,
                                   int N, const DiskQuadrature& rule) {
    check_weight_exponent(alpha, "expand_function");
    if (N < 0) throw std::invalid_argument("expand_function: negative degree");
    if (rule.alpha != alpha)
        throw std::invalid_argument("expand_function: rule weight does not match alpha");
    if (rule.radial_exactness < N || rule.angular_exactness < 2 * N)
        throw std::invalid_argument("expand_function: quadrature rule not exact enough");

    // Cache integrand samples once; coefficient integrals are independent
    // per mode and may run concurrently, but serial is plenty here.
    struct Node {
        double x1, x2, w;
        Complex fval;
    };
    std::vector<Node> nodes;
    nodes.reserve(rule.radial_nodes.size() * static_cast<std::size_t>(rule.angular_count));
    const double scale = std::pow(2.0, -alpha - 2.0) *
                         (2.0 * std::numbers::pi / rule.angular_count);
    for (std::size_t i = 0; i < rule.radial_nodes.size(); ++i) {
        const double r = std::sqrt((1.0 + rule.radial_nodes[i]) / 2.0);
        for (int k = 0; k < rule.angular_count; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / rule.angular_count;
            const double x1 = r * std::cos(theta), x2 = r * std::sin(theta);
            nodes.push_back({x1, x2, scale * rule.radial_weights[i], f(x1, x2)});
        }
    }

    ZernikePoly::CoeffMap out;
    for (int m = 0; m <= N; ++m) {
        for (int n = 0; m + n <= N; ++n) {
            Complex acc{0.0, 0.0};
            for (const Node& nd : nodes)
                acc += nd.w * nd.fval * std::conj(basis_value(alpha, m, n, nd.x1, nd.x2));
            const Complex c = acc / mode_norm_sq(alpha, m, n);
            if (c != Complex{0.0, 0.0}) out[ModeIndex{m, n}] = c;
        }
    }
    return ZernikePoly(alpha, std::move(out));
}

}  // namespace zernike
