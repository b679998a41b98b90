#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "zernike/log_scaled.hpp"

namespace zernike {

// Degree and weight exponents of a Jacobi polynomial J^(a,b)_n, orthogonal on
// (-1,1) under (1-t)^a (1+t)^b and normalized by J_n(1) = binom(n+a, n).
struct JacobiParams {
    int n = 0;
    double a = 0.0;
    double b = 0.0;

    void validate() const {
        if (n < 0) throw std::invalid_argument("JacobiParams: degree must be nonnegative");
        if (!(a > -1.0) || !(b > -1.0))
            throw std::domain_error("JacobiParams: weight exponents must exceed -1");
    }
};

// Three-term recurrence in the degree; stable for t in [-1,1].
inline double jacobi_eval(const JacobiParams& params, double t) {
    params.validate();
    const double a = params.a, b = params.b;
    if (params.n == 0) return 1.0;
    double jm1 = 1.0;
    double j = ((a + b + 2.0) * t + (a - b)) / 2.0;
    for (int k = 2; k <= params.n; ++k) {
        const double s = 2.0 * k + a + b;
        const double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        const double c2 = (s - 1.0) * (a * a - b * b);
        const double c3 = (s - 2.0) * (s - 1.0) * s;
        const double c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        const double jk = ((c2 + c3 * t) * j - c4 * jm1) / c1;
        jm1 = j;
        j = jk;
    }
    return j;
}

inline double jacobi_eval(int n, double a, double b, double t) {
    return jacobi_eval(JacobiParams{n, a, b}, t);
}

// d/dt J^(a,b)_n = (n+a+b+1)/2 * J^(a+1,b+1)_{n-1}
inline double jacobi_derivative(int n, double a, double b, double t) {
    if (n == 0) return 0.0;
    return 0.5 * (n + a + b + 1.0) * jacobi_eval(n - 1, a + 1.0, b + 1.0, t);
}

// Coefficients c_0..c_n with J^(source_a, b)_n = sum_k c_k J^(target_a, b)_k.
// Each c_k is the product of Pochhammer/Gamma factors composed in log domain;
// the target_a + b = -1 limit of the formula is not supported.
inline std::vector<double> jacobi_connection(int n, double source_a, double target_a, double b) {
    if (n < 0) throw std::invalid_argument("jacobi_connection: negative degree");
    if (!(source_a > -1.0) || !(target_a > -1.0) || !(b > -1.0))
        throw std::domain_error("jacobi_connection: parameters must exceed -1");
    if (target_a + b == -1.0)
        throw std::domain_error("jacobi_connection: target_a + b = -1 limit case unsupported");

    const double g = source_a, al = target_a;
    const LogScaled pref = pochhammer(b + 1.0, n) / pochhammer(al + b + 2.0, n);
    std::vector<double> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        LogScaled term = pref;
        term *= pochhammer(g - al, n - k);
        term *= pochhammer(al + b + 1.0, k);
        term *= LogScaled::from_double(al + b + 2.0 * k + 1.0);
        term *= pochhammer(b + g + n + 1.0, k);
        term /= gamma_ratio(n - k + 1.0, 1.0);
        term /= pochhammer(b + 1.0, k);
        term /= LogScaled::from_double(al + b + 1.0);
        term /= pochhammer(al + b + n + 2.0, k);
        c[static_cast<std::size_t>(k)] = term.to_double();
    }
    return c;
}

}  // namespace zernike
