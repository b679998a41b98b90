#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace zernike {

// lgamma without the non-thread-safe signgam global. Arguments are always
// positive in this library, so the sign is +1.
inline double log_gamma(double x) {
#ifdef __GLIBC__
    int sign_unused = 0;
    return ::lgamma_r(x, &sign_unused);
#else
    return std::lgamma(x);
#endif
}

// A real number stored as sign * exp(logmag). Ratios of gamma functions and
// Pochhammer symbols at degrees in the thousands overflow plain doubles
// (Gamma overflows near argument 171), so all such factors are composed in
// this representation and exponentiated only once the full product is formed.
struct LogScaled {
    int sign = 0;          // -1, 0 or +1
    double logmag = 0.0;   // log of the absolute value; ignored when sign == 0

    static constexpr LogScaled zero() { return {0, 0.0}; }
    static constexpr LogScaled one() { return {1, 0.0}; }

    static LogScaled from_double(double x) {
        if (x == 0.0) return zero();
        return {x > 0.0 ? 1 : -1, std::log(std::abs(x))};
    }

    double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(logmag); }

    bool is_zero() const { return sign == 0; }

    LogScaled& operator*=(const LogScaled& o) {
        if (sign == 0 || o.sign == 0) return *this = zero();
        sign *= o.sign;
        logmag += o.logmag;
        return *this;
    }

    LogScaled& operator/=(const LogScaled& o) {
        if (o.sign == 0) throw std::domain_error("LogScaled: division by zero");
        if (sign == 0) return *this;
        sign *= o.sign;
        logmag -= o.logmag;
        return *this;
    }

    friend LogScaled operator*(LogScaled a, const LogScaled& b) { return a *= b; }
    friend LogScaled operator/(LogScaled a, const LogScaled& b) { return a /= b; }
};

// Gamma(a)/Gamma(b) for a, b > 0, via a log-gamma difference. Never evaluates
// the two gamma functions separately.
inline LogScaled gamma_ratio(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("gamma_ratio: arguments must be positive");
    return {1, log_gamma(a) - log_gamma(b)};
}

// Pochhammer symbol (a)_k = a (a+1) ... (a+k-1); (a)_0 = 1 by the empty
// product convention. Exact sign tracking, zero factors allowed.
inline LogScaled pochhammer(double a, int k) {
    if (k < 0) throw std::invalid_argument("pochhammer: negative order");
    LogScaled r = LogScaled::one();
    for (int i = 0; i < k; ++i) {
        const double f = a + i;
        if (f == 0.0) return LogScaled::zero();
        if (f < 0.0) r.sign = -r.sign;
        r.logmag += std::log(std::abs(f));
    }
    return r;
}

}  // namespace zernike
