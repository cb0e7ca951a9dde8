#pragma once

#include <cmath>
#include <string>

#include "partriemann/errors.hpp"

namespace partriemann::roots {

enum class Midpoint { Arithmetic, Geometric };

/// Bisection on a bracket whose endpoint values have opposite signs (a zero
/// at an endpoint is accepted). Runs until the bracket width drops below
/// `x_tol` or stops shrinking in floating point, then returns whichever
/// endpoint has the smaller residual. Geometric midpoints require lo > 0.
template <class F>
double bisect(F&& f, double lo, double hi, double f_lo, double f_hi,
              double x_tol = 0.0, Midpoint midpoint = Midpoint::Arithmetic,
              int max_iter = 600) {
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (std::isnan(f_lo) || std::isnan(f_hi) || (f_lo > 0.0) == (f_hi > 0.0)) {
        throw NoRootError("bisect: endpoints do not bracket a root", lo, hi,
                          f_lo, f_hi);
    }
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(hi - lo) <= x_tol) break;
        double mid = (midpoint == Midpoint::Geometric && lo > 0.0 && hi > 0.0)
                         ? std::sqrt(lo) * std::sqrt(hi)
                         : lo + 0.5 * (hi - lo);
        if (!(mid > std::fmin(lo, hi) && mid < std::fmax(lo, hi))) break;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if (std::isnan(f_mid)) {
            throw NoRootError("bisect: function returned NaN", lo, hi, f_lo,
                              f_hi);
        }
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
}

template <class F>
double bisect(F&& f, double lo, double hi, double x_tol = 0.0,
              Midpoint midpoint = Midpoint::Arithmetic) {
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    return bisect(f, lo, hi, f_lo, f_hi, x_tol, midpoint);
}

} // namespace partriemann::roots
