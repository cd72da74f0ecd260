#pragma once

/**
 * @file quadrature.hpp
 * @brief Adaptive Simpson quadrature with a recursion-depth cap.
 */

#include <cmath>
#include <stdexcept>

namespace gelfand {

/// Thrown when the adaptive subdivision hits its depth cap before the
/// requested accuracy is certified.
struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

template <class F>
double simpson_recurse(F& f, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth, int max_depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
    if (depth >= max_depth)
        throw quadrature_error("adaptive quadrature did not converge within the depth cap");
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

/**
 * @brief Integrates f over [a, b] (a > b allowed, with the usual sign flip)
 *        to roughly the absolute tolerance tol.
 *
 * The interval is pre-split into initial_panels equal panels so that narrow
 * features away from the panel midpoints cannot be missed by the very first
 * error estimate.
 */
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol,
                        int max_depth = 40, int initial_panels = 8) {
    if (!(tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
    if (initial_panels < 1) throw std::invalid_argument("need at least one initial panel");
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    const double panel_tol = tol / initial_panels;
    const double width = (b - a) / initial_panels;
    double total = 0.0;
    for (int p = 0; p < initial_panels; ++p) {
        const double pa = a + p * width;
        const double pb = (p + 1 == initial_panels) ? b : pa + width;
        const double pm = 0.5 * (pa + pb);
        const double fa = f(pa), fm = f(pm), fb = f(pb);
        const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
        total += detail::simpson_recurse(f, pa, pb, fa, fm, fb, whole, panel_tol, 0, max_depth);
    }
    return sign * total;
}

}  // namespace gelfand
