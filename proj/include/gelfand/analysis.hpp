#pragma once

/**
 * @file analysis.hpp
 * @brief Closed-form limit quantities along the branches: integral masses of
 *        lambda e^{u}, the boundary-layer profile of the first eigenfunction
 *        for large tau, pointwise eigenfunction limits, and the eigenvalue
 *        limit targets at both ends of each branch.
 */

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "gelfand/branch.hpp"
#include "gelfand/quadrature.hpp"
#include "gelfand/spectrum.hpp"

namespace gelfand {

/// One measured-versus-target record for a limit check.
struct LimitReport {
    std::string quantity;
    double tau = 0.0;
    double measured = 0.0;
    double target = 0.0;
    double deviation = 0.0;
};

/// int_{-1}^{1} lambda e^{u} dx on the e^{u} branch, in closed form:
/// 2 tau (cos(2 arctan e^{-tau}) - cos(2 arctan e^{tau})).
/// Grows like 4 tau as tau -> infinity and vanishes like 4 tau^2 at 0.
inline double mass_integral(double tau) {
    if (!(tau > 0.0)) throw std::domain_error("mass integral requires tau > 0");
    return 2.0 * tau * (std::cos(2.0 * std::atan(std::exp(-tau))) -
                        std::cos(2.0 * std::atan(std::exp(tau))));
}

/// int_{-1}^{1} sqrt(lambda e^{u}) dx = 2 sqrt(2) (arctan e^{tau} - arctan e^{-tau}),
/// increasing to the finite limit sqrt(2) pi.
inline double sqrt_mass_integral(double tau) {
    if (!(tau > 0.0)) throw std::domain_error("mass integral requires tau > 0");
    return 2.0 * std::sqrt(2.0) * (std::atan(std::exp(tau)) - std::atan(std::exp(-tau)));
}

/**
 * @brief The boundary-layer rescaling phi_1(y/tau)/tau of the first (mu < 0)
 *        eigenfunction on the e^{u} branch past the fold; converges to
 *        sech(y) uniformly on compact sets as tau -> infinity.
 */
inline double scaled_first_eigenfunction(double y, double tau,
                                         const RootSolveConfig& cfg = {}) {
    if (!(tau > tau1()))
        throw std::domain_error("the boundary-layer mode exists only past the fold");
    if (!(std::abs(y) <= tau)) throw std::domain_error("|y| must not exceed tau");
    const EigenPair pair = mu_exact(1, tau, ProblemKind::PlusExp, cfg);
    return EigenfunctionProfile(pair).raw(y / tau) / tau;
}

/**
 * @brief Pointwise large-tau limit of the j-th eigenfunction.
 *
 * e^{u} branch (j >= 2, x in [-1,0) or (0,1]; no value is assigned at 0):
 *   sin((pi/2)(j-1) x + (pi/2)(j+1))  for x > 0,
 *   sin((pi/2)(j-1) x + (pi/2)(j-1))  for x < 0.
 *
 * e^{-u} branch (j >= 1, x in (-1,1); the amplitude blows up at +-1):
 *   sqrt((j+1)^2 + tan^2(pi x/2)) *
 *   sin((pi/2)(j+1) x - arctan(tan(pi x/2)/(j+1)) + pi j/2).
 */
inline double limit_profile(int j, double x, ProblemKind kind) {
    if (kind == ProblemKind::PlusExp) {
        if (j < 2) throw std::invalid_argument("the e^u limit profile requires j >= 2");
        if (!(std::abs(x) <= 1.0) || x == 0.0)
            throw std::domain_error("x must lie in [-1,0) or (0,1]");
        const double phase = kHalfPi * (j - 1) * x;
        return sin_plus_quarter_turns(phase, x > 0.0 ? j + 1 : j - 1);
    }
    if (j < 1) throw std::invalid_argument("eigenvalue index must be >= 1");
    if (!(std::abs(x) < 1.0))
        throw std::domain_error("the e^{-u} limit profile lives on the open interval");
    const double t = std::tan(kHalfPi * x);
    const double k = j + 1.0;
    const double amp = std::sqrt(k * k + t * t);
    const double phase = kHalfPi * k * x - std::atan(t / k);
    return amp * sin_plus_quarter_turns(phase, j);
}

/**
 * @brief int_{-1}^{1} phi_1(x, tau) g(x) dx for the concentrating first
 *        eigenfunction past the fold; tends to pi * g(0) as tau -> infinity.
 */
inline double weak_limit_check(double tau, const std::function<double(double)>& test_fn,
                               double quad_tol = 1e-10) {
    if (!(tau > tau1()))
        throw std::domain_error("the concentrating mode exists only past the fold");
    const EigenPair pair = mu_exact(1, tau, ProblemKind::PlusExp);
    const EigenfunctionProfile phi(pair);
    // 16 initial panels so the O(1/tau)-wide spike at 0 is seen immediately
    return adaptive_simpson([&](double x) { return phi.raw(x) * test_fn(x); }, -1.0, 1.0,
                            quad_tol, 40, 16);
}

/// Limits of sqrt(mu_j) at the two ends of a branch.
struct MuLimitTargets {
    double low_tau;   ///< limit of sqrt(mu_j) as tau -> 0+
    double high_tau;  ///< limit as tau -> infinity (pi/2-) on the e^u (e^{-u}) branch
};

/// pi j/2 at the low end for both branches; pi (j-1)/2 (e^u, j >= 2) or
/// pi (j+1)/2 (e^{-u}) at the high end.  For j = 1 on the e^u branch mu_1
/// diverges to -infinity, encoded as -infinity here.
inline MuLimitTargets mu_limit_targets(int j, ProblemKind kind) {
    if (j < 1) throw std::invalid_argument("eigenvalue index must be >= 1");
    if (kind == ProblemKind::PlusExp) {
        if (j == 1) return {kHalfPi, -std::numeric_limits<double>::infinity()};
        return {kHalfPi * j, kHalfPi * (j - 1)};
    }
    return {kHalfPi * j, kHalfPi * (j + 1)};
}

}  // namespace gelfand
