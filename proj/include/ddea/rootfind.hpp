#pragma once

#include <cmath>
#include <functional>

#include "ddea/errors.hpp"

namespace ddea {

/// Brent's method on [lo, hi]; f(lo) and f(hi) must bracket a root.
/// Throws NoRoot if the bracket is invalid.
template <typename F>
double brent(F&& f, double lo, double hi, double xtol = 1e-14, int max_iter = 200) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0) == (fb > 0)) throw NoRoot("bracket does not change sign");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0) == (fc > 0)) {
            c = a; fc = fa; d = b - a; e = d;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * 1e-16 * std::fabs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::fabs(m) <= tol || fb == 0.0) return b;

        if (std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
            double p, q_;
            const double s = fb / fa;
            if (a == c) {  // secant
                p = 2.0 * m * s;
                q_ = 1.0 - s;
            } else {  // inverse quadratic
                const double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q_ = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q_ = -q_;
            p = std::fabs(p);
            if (2.0 * p < std::fmin(3.0 * m * q_ - std::fabs(tol * q_), std::fabs(e * q_))) {
                e = d; d = p / q_;
            } else {
                d = m; e = m;
            }
        } else {
            d = m; e = m;
        }
        a = b; fa = fb;
        b += (std::fabs(d) > tol) ? d : (m > 0 ? tol : -tol);
        fb = f(b);
    }
    return b;
}

}  // namespace ddea
