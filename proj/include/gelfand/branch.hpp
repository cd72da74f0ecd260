#pragma once

/**
 * @file branch.hpp
 * @brief Exact solution branches of the one-dimensional Gel'fand-type problems
 *        u'' + lambda e^{u} = 0 and u'' + lambda e^{-u} = 0 on (-1,1) with
 *        zero Dirichlet data.
 *
 * Every positive solution is parametrized by a single branch parameter tau:
 *
 *   e^{+u}:  alpha = 2 log cosh(tau),  lambda = 2 tau^2 / cosh^2(tau),  tau in [0, inf)
 *   e^{-u}:  alpha = -2 log cos(tau),  lambda = 2 tau^2 / cos^2(tau),   tau in [0, pi/2)
 *
 * with alpha = u(0) = ||u||_inf.  All functions are pure and safe to call
 * concurrently.
 */

#include <cmath>
#include <stdexcept>

namespace gelfand {

/// Which exponential nonlinearity a solution branch belongs to.
enum class ProblemKind {
    PlusExp,   ///< f(u) = e^{u}
    MinusExp,  ///< f(u) = e^{-u}
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = 1.57079632679489661923;
inline constexpr double kLog2 = 0.69314718055994530942;

/// Guard band keeping cos(tau) strictly positive on the e^{-u} branch.
inline constexpr double kMinusExpTauMax = kHalfPi - 1e-12;

/// One point (tau, lambda, alpha) on a solution curve.
struct BranchPoint {
    ProblemKind kind;
    double tau;
    double lambda;
    double alpha;  ///< sup norm of u
};

/// The turning point tau1 of the e^{u} branch together with the residual of
/// its defining equation tau*tanh(tau) = 1.
struct Tau1 {
    double value;
    double residual;
};

/// log(cosh(z)) without overflow for large |z|.
inline double logcosh(double z) noexcept {
    const double a = std::abs(z);
    return a + std::log1p(std::exp(-2.0 * a)) - kLog2;
}

/// True iff tau lies in the admissible range of the given branch.
inline bool tau_admissible(double tau, ProblemKind kind) noexcept {
    if (!(tau >= 0.0)) return false;  // rejects negatives and NaN
    return kind == ProblemKind::PlusExp || tau <= kMinusExpTauMax;
}

inline void require_tau(double tau, ProblemKind kind) {
    if (!tau_admissible(tau, kind))
        throw std::domain_error("tau outside the admissible range of this branch");
}

inline void require_x(double x) {
    if (!(std::abs(x) <= 1.0)) throw std::domain_error("x outside [-1,1]");
}

/// alpha = ||u||_inf as a function of the branch parameter.
inline double alpha_from_tau(double tau, ProblemKind kind) {
    require_tau(tau, kind);
    if (kind == ProblemKind::PlusExp) return 2.0 * logcosh(tau);
    return -2.0 * std::log(std::cos(tau));
}

/**
 * @brief Inverse of alpha_from_tau.
 *
 * PlusExp: arcosh(e^{alpha/2}) evaluated as alpha/2 + log1p(sqrt(1-e^{-alpha}))
 * so that large alpha never overflows.  MinusExp: arctan(sqrt(e^alpha - 1)).
 */
inline double tau_from_alpha(double alpha, ProblemKind kind) {
    if (!(alpha >= 0.0)) throw std::domain_error("alpha must be nonnegative");
    if (kind == ProblemKind::PlusExp)
        return 0.5 * alpha + std::log1p(std::sqrt(-std::expm1(-alpha)));
    return std::atan(std::sqrt(std::expm1(alpha)));
}

/// lambda(tau); log-space evaluation past cosh overflow on the e^{u} branch.
inline double lambda_of_tau(double tau, ProblemKind kind) {
    require_tau(tau, kind);
    if (kind == ProblemKind::PlusExp) {
        if (tau > 350.0) return std::exp(kLog2 + 2.0 * (std::log(tau) - logcosh(tau)));
        const double r = tau / std::cosh(tau);
        return 2.0 * r * r;
    }
    const double r = tau / std::cos(tau);
    return 2.0 * r * r;
}

/// log(lambda(tau)); finite far past the underflow threshold of lambda itself.
inline double log_lambda_of_tau(double tau, ProblemKind kind) {
    require_tau(tau, kind);
    if (!(tau > 0.0)) throw std::domain_error("log lambda requires tau > 0");
    if (kind == ProblemKind::PlusExp) return kLog2 + 2.0 * (std::log(tau) - logcosh(tau));
    return kLog2 + 2.0 * (std::log(tau) - std::log(std::cos(tau)));
}

/// The solution profile u(x, tau); even in x, zero at x = +-1, alpha at x = 0.
inline double u_value(double x, double tau, ProblemKind kind) {
    require_x(x);
    require_tau(tau, kind);
    if (kind == ProblemKind::PlusExp) return 2.0 * (logcosh(tau) - logcosh(tau * x));
    return 2.0 * (std::log(std::cos(tau * x)) - std::log(std::cos(tau)));
}

/**
 * @brief lambda(tau) e^{+-u(x,tau)}, the coefficient in front of phi in the
 *        linearized equation, always positive.
 *
 * PlusExp: 2 tau^2 / cosh^2(tau x).  MinusExp: 2 tau^2 / cos^2(tau x).
 */
inline double potential_q(double x, double tau, ProblemKind kind) {
    require_x(x);
    require_tau(tau, kind);
    if (kind == ProblemKind::PlusExp) {
        const double z = tau * x;
        if (std::abs(z) > 350.0)
            return std::exp(kLog2 + 2.0 * (std::log(tau) - logcosh(z)));
        const double r = tau / std::cosh(z);
        return 2.0 * r * r;
    }
    const double r = tau / std::cos(tau * x);
    return 2.0 * r * r;
}

/**
 * @brief lambda(tau) f'(u(x,tau)), the signed zeroth-order coefficient of the
 *        linearized operator phi'' + lambda f'(u) phi = -mu phi.
 *
 * For f = e^{u} this equals +potential_q; for f = e^{-u} the derivative flips
 * the sign, giving -potential_q (the operator -d^2/dx^2 + lambda e^{-u} pushes
 * the spectrum above the free Dirichlet eigenvalues, matching the brackets
 * (pi j/2)^2 < mu_j).
 */
inline double linearized_potential(double x, double tau, ProblemKind kind) {
    const double q = potential_q(x, tau, kind);
    return kind == ProblemKind::PlusExp ? q : -q;
}

/// d lambda / d tau.  Positive below tau1 and negative above it on the e^{u}
/// branch; always positive on the e^{-u} branch.
inline double lambda_derivative(double tau, ProblemKind kind) {
    require_tau(tau, kind);
    if (kind == ProblemKind::PlusExp) {
        const double g = 1.0 - tau * std::tanh(tau);
        if (tau > 350.0)  // g < 0 here; keep the magnitude in log space
            return -std::exp(std::log(4.0 * tau * (-g)) - 2.0 * logcosh(tau));
        const double ch = std::cosh(tau);
        return 4.0 * tau / (ch * ch) * g;
    }
    const double c = std::cos(tau);
    return 4.0 * tau * (1.0 + tau * std::tan(tau)) / (c * c);
}

/**
 * @brief Solves tau*tanh(tau) = 1, the fold of the e^{u} branch.
 *
 * Bisection on the hard-coded bracket [1, 1.5] followed by a Newton polish;
 * the left-hand side is strictly increasing there, so the root is unique.
 */
inline Tau1 solve_tau1() {
    const auto g = [](double t) { return t * std::tanh(t) - 1.0; };
    double lo = 1.0, hi = 1.5;
    if (!(g(lo) < 0.0 && g(hi) > 0.0))
        throw std::logic_error("turning-point bracket lost its sign change");
    for (int i = 0; i < 80 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    double t = 0.5 * (lo + hi);
    for (int i = 0; i < 2; ++i) {
        const double th = std::tanh(t);
        t -= (t * th - 1.0) / (th + t * (1.0 - th * th));
    }
    return {t, g(t)};
}

/// The turning point, solved once and cached.
inline double tau1() {
    static const double value = solve_tau1().value;
    return value;
}

/// Assembles the (tau, lambda, alpha) triple for one branch point.
inline BranchPoint branch_point(double tau, ProblemKind kind) {
    return {kind, tau, lambda_of_tau(tau, kind), alpha_from_tau(tau, kind)};
}

}  // namespace gelfand
