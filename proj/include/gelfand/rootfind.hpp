#pragma once

/**
 * @file rootfind.hpp
 * @brief Minimal bracketing root solver: bisection to a width tolerance,
 *        optionally followed by a clamped Newton polish.
 */

#include <cmath>
#include <stdexcept>
#include <utility>

namespace gelfand {

/// Thrown when a supposed sign-change bracket does not actually change sign.
struct bracket_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * @brief Bisects a sign-change bracket [lo, hi] down to the given width.
 *
 * Requires f(lo) and f(hi) of opposite sign (a zero endpoint is returned
 * immediately).  Stops early if the bracket reaches floating-point
 * resolution.  Returns the midpoint of the final bracket.
 */
template <class F>
double bisect(F&& f, double lo, double hi, double width_tol, int max_iter) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    double fhi = f(hi);
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw bracket_error("no sign change on bracket");
    for (int i = 0; i < max_iter && hi - lo > width_tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at machine resolution
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/**
 * @brief One Newton step from x, discarded if it leaves [lo, hi] or is not
 *        finite.  Used to polish an already-bisected root.
 */
template <class F, class DF>
double newton_polish(F&& f, DF&& df, double x, double lo, double hi) {
    const double d = df(x);
    if (d == 0.0) return x;
    const double next = x - f(x) / d;
    if (!std::isfinite(next) || next < lo || next > hi) return x;
    return next;
}

}  // namespace gelfand
