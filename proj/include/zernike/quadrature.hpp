#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "zernike/jacobi.hpp"
#include "zernike/log_scaled.hpp"

namespace zernike {

struct GaussJacobiRule {
    std::vector<double> nodes;    // ascending in (-1,1)
    std::vector<double> weights;  // positive
};

namespace detail {

// ||J^(a,b)_k||^2 under (1-t)^a (1+t)^b on (-1,1), written so every gamma
// argument stays positive even when a+b+1 <= 0. The k = 0 norm is the Beta
// moment directly; the general form's (k+a+b+1)/(2k+a+b+1) factor is 0/0
// there when a+b = -1.
inline double jacobi_norm_sq(int k, double a, double b) {
    LogScaled v{1, (a + b + 1.0) * std::numbers::ln2};
    v *= gamma_ratio(k + a + 1.0, k + 1.0);
    v *= gamma_ratio(k + b + 1.0, k + a + b + 2.0);
    if (k > 0) v *= LogScaled::from_double((k + a + b + 1.0) / (2.0 * k + a + b + 1.0));
    return v.to_double();
}

}  // namespace detail

// Gauss-Jacobi rule for the weight (1-t)^a (1+t)^b: nodes are the roots of
// J^(a,b)_n, found by a sign-change scan over a Chebyshev grid followed by
// bisection-safeguarded Newton iteration (tolerance 1e-14, 100-step cap);
// weights are the Christoffel numbers 1 / sum_{k<n} J_k(x)^2/||J_k||^2.
inline GaussJacobiRule gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_jacobi: need at least one node");
    if (!(a > -1.0) || !(b > -1.0))
        throw std::domain_error("gauss_jacobi: weight exponents must exceed -1");

    const auto f = [&](double t) { return jacobi_eval(n, a, b, t); };
    const auto fp = [&](double t) { return jacobi_derivative(n, a, b, t); };

    std::vector<double> roots;
    for (int grid = 8 * n + 16; roots.size() != static_cast<std::size_t>(n); grid *= 2) {
        if (grid > (1 << 22)) throw std::runtime_error("gauss_jacobi: root bracketing failed");
        roots.clear();
        double xl = std::cos(std::numbers::pi);  // scan from -1 to 1
        double vl = f(xl);
        for (int i = grid - 1; i >= 0; --i) {
            const double xr = std::cos(std::numbers::pi * i / grid);
            const double vr = f(xr);
            if ((vl < 0.0) != (vr < 0.0) || vl == 0.0) {
                // bracketed; polish by Newton, falling back to bisection
                double lo = xl, hi = xr, x = 0.5 * (lo + hi);
                double flo = vl;
                for (int it = 0; it < 100; ++it) {
                    const double fx = f(x);
                    if ((fx < 0.0) == (flo < 0.0)) {
                        lo = x;
                        flo = fx;
                    } else {
                        hi = x;
                    }
                    const double d = fp(x);
                    double xn = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
                    if (!(xn > lo) || !(xn < hi)) xn = 0.5 * (lo + hi);
                    if (std::abs(xn - x) <= 1e-14 * std::max(1.0, std::abs(x))) {
                        x = xn;
                        break;
                    }
                    x = xn;
                }
                roots.push_back(x);
            }
            xl = xr;
            vl = vr;
        }
    }

    GaussJacobiRule rule;
    rule.nodes = roots;
    rule.weights.reserve(roots.size());
    std::vector<double> inv_norm(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        inv_norm[static_cast<std::size_t>(k)] = 1.0 / detail::jacobi_norm_sq(k, a, b);
    for (double x : roots) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) {
            const double jk = jacobi_eval(k, a, b, x);
            s += jk * jk * inv_norm[static_cast<std::size_t>(k)];
        }
        rule.weights.push_back(1.0 / s);
    }
    return rule;
}

// Tensor rule on the unit disk for the weight rho^alpha, rho = 1-|x|^2:
// Gauss-Jacobi in the radial substitution variable s = 2r^2-1 crossed with
// equiangular nodes. The substitution contract is
//   int_{B^2} f rho^alpha = 2^(-alpha-2) int_0^{2pi} int_{-1}^{1}
//       f(r(s),theta) (1-s)^alpha ds dtheta,      r(s) = sqrt((1+s)/2),
// exact to roundoff whenever f has radial degree in r^2 at most
// radial_exactness and angular frequency at most angular_exactness.
struct DiskQuadrature {
    double alpha = 0.0;
    std::vector<double> radial_nodes;    // s-values in (-1,1)
    std::vector<double> radial_weights;  // Gauss-Jacobi for (1-s)^alpha
    int angular_count = 0;               // K equiangular nodes, weight 2pi/K
    int radial_exactness = 0;            // exact for s-polynomials of degree <= this
    int angular_exactness = 0;           // exact for e^{ij theta}, |j| <= this
};

inline DiskQuadrature disk_rule(double alpha, int n_rad, int n_ang) {
    if (!(alpha > -1.0)) throw std::domain_error("disk_rule: alpha must exceed -1");
    if (n_rad < 1 || n_ang < 1) throw std::invalid_argument("disk_rule: need positive node counts");
    GaussJacobiRule radial = gauss_jacobi(n_rad, alpha, 0.0);
    DiskQuadrature rule;
    rule.alpha = alpha;
    rule.radial_nodes = std::move(radial.nodes);
    rule.radial_weights = std::move(radial.weights);
    rule.angular_count = n_ang;
    rule.radial_exactness = 2 * n_rad - 1;
    rule.angular_exactness = n_ang - 1;
    return rule;
}

// Discrete form of the substitution contract. The integrand may be evaluated
// concurrently across nodes by callers provided it is itself safe for
// concurrent calls; this loop is serial.
inline std::complex<double> integrate(const std::function<std::complex<double>(double, double)>& f,
                                      const DiskQuadrature& rule) {
    const double scale = std::pow(2.0, -rule.alpha - 2.0) *
                         (2.0 * std::numbers::pi / rule.angular_count);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < rule.radial_nodes.size(); ++i) {
        const double r = std::sqrt((1.0 + rule.radial_nodes[i]) / 2.0);
        std::complex<double> ring{0.0, 0.0};
        for (int k = 0; k < rule.angular_count; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / rule.angular_count;
            ring += f(r * std::cos(theta), r * std::sin(theta));
        }
        acc += rule.radial_weights[i] * ring;
    }
    return scale * acc;
}

}  // namespace zernike
