#pragma once

/**
 * @file key_ode.hpp
 * @brief The change-of-variables machinery behind the closed-form spectra:
 *        auxiliary solutions h(u), the third-order ODE they satisfy, its
 *        first integral rho, and the phase representation
 *        theta(x) = sqrt(lambda rho / 2) * int_0^x dy / h(u(y)).
 *
 * For a general nonlinearity f with primitive F, an eigenfunction of the
 * linearization can be written as sqrt(h(u(x))) * w(theta(x)) with w a
 * trigonometric (mu > 0) or hyperbolic (mu < 0) oscillation, provided h
 * solves the key third-order linear ODE below.  For f = e^{u} and f = e^{-u}
 * explicit h families exist and reproduce the closed forms of spectrum.hpp.
 */

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "gelfand/branch.hpp"
#include "gelfand/quadrature.hpp"
#include "gelfand/spectrum.hpp"

namespace gelfand {

/// A nonlinearity bundle: f, its first two derivatives, and the primitive
/// F(u) = int_0^u f (so F(0) = 0).
struct Nonlinearity {
    std::function<double(double)> f;
    std::function<double(double)> f_prime;
    std::function<double(double)> f_double_prime;
    std::function<double(double)> F;

    static Nonlinearity exp_plus() {
        const auto e = [](double u) { return std::exp(u); };
        return {e, e, e, [](double u) { return std::expm1(u); }};
    }

    static Nonlinearity exp_minus() {
        const auto e = [](double u) { return std::exp(-u); };
        return {e,
                [](double u) { return -std::exp(-u); },
                e,
                [](double u) { return -std::expm1(-u); }};
    }
};

inline Nonlinearity nonlinearity_for(ProblemKind kind) {
    return kind == ProblemKind::PlusExp ? Nonlinearity::exp_plus()
                                        : Nonlinearity::exp_minus();
}

/// An auxiliary solution h of the key ODE, as evaluators in the variable u,
/// together with the branch context it was built for.
struct HSolution {
    std::function<double(double)> h;
    std::function<double(double)> h_prime;  ///< dh/du
    std::function<double(double)> h2;       ///< d^2h/du^2
    std::function<double(double)> h3;       ///< d^3h/du^3
    double alpha;
    double lambda;
    double mu;
};

/// h = 2 mu/lambda + e^alpha - e^u, the positive-eigenvalue family on the
/// e^{u} branch.  All three u-derivatives equal -e^u.
inline HSolution exact_h_plus_positive(double tau, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("this h family requires mu > 0");
    const double alpha = alpha_from_tau(tau, ProblemKind::PlusExp);
    const double lambda = lambda_of_tau(tau, ProblemKind::PlusExp);
    const double c = 2.0 * mu / lambda + std::exp(alpha);
    const auto de = [](double u) { return -std::exp(u); };
    return {[c](double u) { return c - std::exp(u); }, de, de, de, alpha, lambda, mu};
}

/// h = 2(-mu)/lambda - e^alpha + e^u, the negative-eigenvalue family past the
/// fold of the e^{u} branch (the negative of the mu > 0 family at the same mu;
/// the ODE is linear, so it solves it as well).  Derivatives equal +e^u.
inline HSolution exact_h_plus_negative(double tau, double mu) {
    if (!(mu < 0.0)) throw std::invalid_argument("this h family requires mu < 0");
    const double alpha = alpha_from_tau(tau, ProblemKind::PlusExp);
    const double lambda = lambda_of_tau(tau, ProblemKind::PlusExp);
    const double c = -2.0 * mu / lambda - std::exp(alpha);
    const auto e = [](double u) { return std::exp(u); };
    return {[c](double u) { return c + std::exp(u); }, e, e, e, alpha, lambda, mu};
}

/// h = 2 mu/lambda - e^{-alpha} + e^{-u} for the e^{-u} branch (mu > 0).
/// The u-derivatives alternate sign: -e^{-u}, +e^{-u}, -e^{-u}.
inline HSolution exact_h_minus(double tau, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("this h family requires mu > 0");
    const double alpha = alpha_from_tau(tau, ProblemKind::MinusExp);
    const double lambda = lambda_of_tau(tau, ProblemKind::MinusExp);
    const double c = 2.0 * mu / lambda - std::exp(-alpha);
    return {[c](double u) { return c + std::exp(-u); },
            [](double u) { return -std::exp(-u); },
            [](double u) { return std::exp(-u); },
            [](double u) { return -std::exp(-u); },
            alpha, lambda, mu};
}

/// Picks the exact h family matching the sign of mu (mu < 0 only occurs on
/// the e^{u} branch).
inline HSolution exact_h(double tau, double mu, ProblemKind kind) {
    if (mu == 0.0) throw std::domain_error("no h family at mu = 0");
    if (mu < 0.0) {
        if (kind == ProblemKind::MinusExp)
            throw std::domain_error("negative eigenvalues occur only on the e^u branch");
        return exact_h_plus_negative(tau, mu);
    }
    return kind == ProblemKind::PlusExp ? exact_h_plus_positive(tau, mu)
                                        : exact_h_minus(tau, mu);
}

/**
 * @brief Residual of the key third-order ODE at the point u:
 *        2(F(alpha)-F(u)) h''' - 3 f(u) h'' + (3 f'(u) + 4 mu/lambda) h' + 2 f''(u) h.
 *
 * Identically zero (to rounding) for the exact h families above.
 */
inline double key_ode_residual(const Nonlinearity& nl, const HSolution& hs, double u) {
    const double m = hs.mu / hs.lambda;
    return 2.0 * (nl.F(hs.alpha) - nl.F(u)) * hs.h3(u) - 3.0 * nl.f(u) * hs.h2(u) +
           (3.0 * nl.f_prime(u) + 4.0 * m) * hs.h_prime(u) + 2.0 * nl.f_double_prime(u) * hs.h(u);
}

/// Sum of the absolute values of the four key-ODE terms at u; the natural
/// scale against which a residual should be judged small.
inline double key_ode_residual_scale(const Nonlinearity& nl, const HSolution& hs, double u) {
    const double m = hs.mu / hs.lambda;
    return std::abs(2.0 * (nl.F(hs.alpha) - nl.F(u)) * hs.h3(u)) +
           std::abs(3.0 * nl.f(u) * hs.h2(u)) +
           std::abs((3.0 * nl.f_prime(u) + 4.0 * m) * hs.h_prime(u)) +
           std::abs(2.0 * nl.f_double_prime(u) * hs.h(u));
}

/// The constant of the first integral, evaluated at u = alpha where the
/// (F(alpha)-F(u)) term drops out:
/// rho = -f(alpha) h(alpha) h'(alpha) + 2 (f'(alpha) + mu/lambda) h(alpha)^2.
inline double rho_value(const Nonlinearity& nl, const HSolution& hs) {
    const double a = hs.alpha;
    const double ha = hs.h(a);
    return -nl.f(a) * ha * hs.h_prime(a) + 2.0 * (nl.f_prime(a) + hs.mu / hs.lambda) * ha * ha;
}

/// Closed form of rho for the exponential branches, with a = sqrt(|mu|)/tau:
/// a^2 (a^2+1)^2 cosh^6(tau)   (e^{u},  mu > 0)
/// -a^2 (1-a^2)^2 cosh^6(tau)  (e^{u},  mu < 0)
/// a^2 (a^2-1)^2 cos^6(tau)    (e^{-u}, mu > 0)
inline double rho_closed_form(double tau, double mu, ProblemKind kind) {
    const double a2 = std::abs(mu) / (tau * tau);
    if (kind == ProblemKind::PlusExp) {
        const double ch = std::cosh(tau);
        const double ch6 = ch * ch * ch * ch * ch * ch;
        if (mu > 0.0) return a2 * (a2 + 1.0) * (a2 + 1.0) * ch6;
        const double d = 1.0 - a2;
        return -a2 * d * d * ch6;
    }
    const double co = std::cos(tau);
    const double co6 = co * co * co * co * co * co;
    const double d = a2 - 1.0;
    return a2 * d * d * co6;
}

/**
 * @brief Residual of the first integral at the spatial point x:
 *        (F(alpha)-F(u))(2 h'' h - h'^2) - f(u) h h' + 2 (f'(u) + mu/lambda) h^2 - rho
 *        with u = u(x, tau).
 *
 * With the f'(u) coefficient (the default) this vanishes identically along
 * the branch.  literal_f_term = true replaces f'(u) by f(u) in the quadratic
 * term; for f = e^{u} the two coincide, but for f = e^{-u} the literal
 * variant differs by 4 e^{-u} h^2 and is visibly non-constant.
 */
inline double first_integral_residual(const Nonlinearity& nl, const HSolution& hs,
                                      double tau, ProblemKind kind, double x,
                                      bool literal_f_term = false) {
    const double u = u_value(x, tau, kind);
    const double m = hs.mu / hs.lambda;
    const double h = hs.h(u);
    const double hp = hs.h_prime(u);
    const double quad_coeff = literal_f_term ? nl.f(u) : nl.f_prime(u);
    const double lhs = (nl.F(hs.alpha) - nl.F(u)) * (2.0 * hs.h2(u) * h - hp * hp) -
                       nl.f(u) * h * hp + 2.0 * (quad_coeff + m) * h * h;
    return lhs - rho_value(nl, hs);
}

/// Sum of the absolute values of the first-integral terms and rho at x; the
/// scale for judging the residual, safe even where rho itself degenerates.
inline double first_integral_scale(const Nonlinearity& nl, const HSolution& hs,
                                   double tau, ProblemKind kind, double x) {
    const double u = u_value(x, tau, kind);
    const double m = hs.mu / hs.lambda;
    const double h = hs.h(u);
    const double hp = hs.h_prime(u);
    return std::abs((nl.F(hs.alpha) - nl.F(u)) * (2.0 * hs.h2(u) * h - hp * hp)) +
           std::abs(nl.f(u) * h * hp) + std::abs(2.0 * (nl.f_prime(u) + m) * h * h) +
           std::abs(rho_value(nl, hs));
}

/// Radius of the interval around 0 on which the mu < 0 auxiliary h stays
/// positive: artanh(a)/tau with a = sqrt(-mu)/tau, or +infinity when a >= 1.
inline double negative_mode_validity_radius(double tau, double mu) {
    if (!(mu < 0.0)) throw std::domain_error("validity radius applies to mu < 0 only");
    const double a = std::sqrt(-mu) / tau;
    if (a >= 1.0) return std::numeric_limits<double>::infinity();
    return std::atanh(a) / tau;
}

/**
 * @brief The phase computed from first principles:
 *        theta(x) = sqrt(lambda |rho| / 2) * int_0^x dy / h(u(y)),
 *        with rho taken from rho_value on the matching exact h family.
 *
 * Agrees with the closed-form phase_theta to quadrature accuracy.  For
 * mu < 0 the integrand is only defined while h > 0; x outside that interval
 * raises a domain error.
 */
inline double theta_numeric(double x, double tau, double mu, ProblemKind kind,
                            double quad_tol = 1e-10) {
    require_x(x);
    if (mu == 0.0) throw std::domain_error("phase undefined at mu = 0");
    const HSolution hs = exact_h(tau, mu, kind);
    if (mu < 0.0 && !(std::abs(x) < negative_mode_validity_radius(tau, mu)))
        throw std::domain_error("x outside the validity interval of the hyperbolic phase");
    const Nonlinearity nl = nonlinearity_for(kind);
    const double rho = rho_value(nl, hs);
    const double pref = std::sqrt(0.5 * hs.lambda * std::abs(rho));
    return adaptive_simpson(
        [&](double y) { return pref / hs.h(u_value(y, tau, kind)); }, 0.0, x, quad_tol);
}

/**
 * @brief Rebuilds an eigenfunction candidate sqrt(h(u(x))) * w(theta(x))
 *        directly from the h family and its phase.
 *
 * w = sin for odd candidates, cos for even ones (theta is odd in x, so the
 * stated parities are automatic), and cosh for mu < 0, which is even
 * regardless of the requested parity.  Proportional to the closed-form
 * eigenfunction whenever mu is an actual eigenvalue.
 */
inline double assemble_candidate(double x, double tau, double mu, ProblemKind kind,
                                 Parity parity) {
    require_x(x);
    if (mu == 0.0) throw std::domain_error("no oscillatory candidate at mu = 0");
    const HSolution hs = exact_h(tau, mu, kind);
    const double h = hs.h(u_value(x, tau, kind));
    if (mu < 0.0) {
        if (!(h > 0.0))
            throw std::domain_error("x outside the validity interval of the hyperbolic phase");
        return std::sqrt(h) * std::cosh(phase_theta(x, tau, mu, kind));
    }
    const double theta = phase_theta(x, tau, mu, kind);
    return std::sqrt(h) * (parity == Parity::Odd ? std::sin(theta) : std::cos(theta));
}

/// The fold eigenfunction tanh(tau) - x tanh(tau x): the even mu = 0 mode at
/// tau*tanh(tau) = 1, vanishing at x = +-1 exactly by the defining relation.
inline double mu_zero_eigenfunction(double tau, double x) {
    require_x(x);
    return std::tanh(tau) - x * std::tanh(tau * x);
}

}  // namespace gelfand
