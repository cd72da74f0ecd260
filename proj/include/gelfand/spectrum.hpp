#pragma once

/**
 * @file spectrum.hpp
 * @brief Exact eigenvalues and eigenfunctions of the linearization
 *        phi'' + lambda f'(u) phi = -mu phi, phi(+-1) = 0,
 *        along the solution branches of branch.hpp.
 *
 * Writing s = sqrt(mu) and c = tau*tanh(tau) (e^{u}) or c = tau*tan(tau)
 * (e^{-u}), the positive eigenvalues are the roots of one scalar phase
 * equation per index j:
 *
 *   e^{u}:   s + arctan(c/s) = (pi/2) j,      s in ((pi/2)(j-1), (pi/2) j)
 *   e^{-u}:  s - arctan(c/s) = (pi/2) j,      s in ((pi/2) j, (pi/2)(j+1))
 *
 * On the e^{u} branch the first eigenvalue crosses zero at the fold
 * tau1 (tau*tanh(tau) = 1) and is negative beyond it, with s = sqrt(-mu1)
 * solving tanh(s) = s/c on (0, c).  Eigenfunctions are available in closed
 * form for every case.
 */

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gelfand/branch.hpp"
#include "gelfand/quadrature.hpp"
#include "gelfand/rootfind.hpp"

namespace gelfand {

/// Controls for the scalar eigenvalue equations.
struct RootSolveConfig {
    double abs_tol = 1e-13;        ///< bisection bracket-width target
    int max_bisections = 200;      ///< hard iteration cap
    double bracket_epsilon = 1e-9; ///< relative inset shielding spurious endpoint zeros
};

/// Width of the window around tau1 inside which mu1 is snapped to exactly 0.
inline constexpr double kMuZeroWindow = 1e-10;

/// One eigenvalue mu_j of the linearization at a fixed branch point.
struct EigenPair {
    ProblemKind kind;
    int j;       ///< eigenvalue index, 1-based
    double tau;
    double mu;
};

/// c = tau*tanh(tau) or tau*tan(tau); the single coefficient entering the
/// phase equations.  Requires tau > 0.
inline double phase_coefficient(double tau, ProblemKind kind) {
    require_tau(tau, kind);
    if (!(tau > 0.0)) throw std::domain_error("phase coefficient requires tau > 0");
    return kind == ProblemKind::PlusExp ? tau * std::tanh(tau) : tau * std::tan(tau);
}

/// sin(phase + j*pi/2) with the quarter turns applied exactly.
inline double sin_plus_quarter_turns(double phase, int j) {
    switch (((j % 4) + 4) % 4) {
        case 0: return std::sin(phase);
        case 1: return std::cos(phase);
        case 2: return -std::sin(phase);
        default: return -std::cos(phase);
    }
}

/**
 * @brief Root s = sqrt(mu_j) of the phase equation for index j >= 1.
 *
 * Bisection, then one clamped Newton step.  For the e^{u} branch the
 * residual is evaluated as (s - arctan(s/c)) - (pi/2)(j-1), which is exactly
 * equivalent and avoids the catastrophic pi/2 cancellation of the printed
 * form when j = 1 and the root sits close to the lower bracket end (tau
 * near the fold).
 *
 * The residual keeps a strict sign at the exact bracket endpoints, so they
 * are used as-is; only the j = 1 lower end on the e^{u} branch is inset by
 * bracket_epsilon, because the rewritten residual has a spurious zero at
 * s = 0.  Throws bracket_error for j = 1 on the e^{u} branch when c >= 1
 * (tau at or past the fold), where mu_1 is no longer positive.
 */
inline double solve_phase_root(int j, double c, ProblemKind kind,
                               const RootSolveConfig& cfg = {}) {
    if (j < 1) throw std::invalid_argument("eigenvalue index must be >= 1");
    if (!(c > 0.0)) throw std::domain_error("phase coefficient must be positive");
    const bool plus = kind == ProblemKind::PlusExp;
    const double lo = plus ? kHalfPi * (j - 1) : kHalfPi * j;
    const double hi = lo + kHalfPi;
    const auto g = [&](double s) {
        return plus ? (s - std::atan(s / c)) - kHalfPi * (j - 1)
                    : (s - std::atan(c / s)) - kHalfPi * j;
    };
    const auto gp = [&](double s) {
        const double d = c / (s * s + c * c);
        return plus ? 1.0 - d : 1.0 + d;
    };
    double a = lo;
    const double b = hi;
    if (plus && j == 1) {
        if (!(c < 1.0))
            throw bracket_error("no positive first eigenvalue at or past the fold");
        a = lo + cfg.bracket_epsilon * (hi - lo);
    }
    const double s = bisect(g, a, b, cfg.abs_tol, cfg.max_bisections);
    return newton_polish(g, gp, s, a, b);
}

/**
 * @brief Root s = sqrt(-mu_1) of tanh(s) = s/c on (0, c), for c > 1.
 *
 * The residual tanh(s) - s/c is positive just right of 0 and negative at
 * s = c; past c ~ 19 the value tanh(c) - 1 rounds to exactly zero, and the
 * bracket endpoint c is then itself the correctly rounded root.
 */
inline double solve_negative_root(double c, const RootSolveConfig& cfg = {}) {
    if (!(c > 1.0))
        throw std::domain_error("negative eigenvalue requires tau*tanh(tau) > 1");
    const auto h = [&](double s) { return std::tanh(s) - s / c; };
    const auto hp = [&](double s) {
        const double t = std::tanh(s);
        return (1.0 - t * t) - 1.0 / c;
    };
    const double a = cfg.bracket_epsilon * c, b = c;
    const double s = bisect(h, a, b, cfg.abs_tol, cfg.max_bisections);
    return newton_polish(h, hp, s, a, b);
}

/**
 * @brief The j-th eigenvalue at branch parameter tau.
 *
 * Dispatches between the three regimes of the e^{u} branch: mu_1 > 0 below
 * the fold, exactly 0 inside the +-kMuZeroWindow window around tau1, and
 * negative above it.  All other eigenvalues (and the whole e^{-u} branch)
 * are positive phase roots.
 */
inline EigenPair mu_exact(int j, double tau, ProblemKind kind,
                          const RootSolveConfig& cfg = {}) {
    require_tau(tau, kind);
    if (!(tau > 0.0)) throw std::domain_error("eigenvalues require tau > 0");
    if (j < 1) throw std::invalid_argument("eigenvalue index must be >= 1");
    if (kind == ProblemKind::PlusExp && j == 1) {
        if (std::abs(tau - tau1()) <= kMuZeroWindow) return {kind, j, tau, 0.0};
        const double c = phase_coefficient(tau, kind);
        if (tau < tau1()) {
            const double s = solve_phase_root(1, c, kind, cfg);
            return {kind, 1, tau, s * s};
        }
        const double s = solve_negative_root(c, cfg);
        return {kind, 1, tau, -s * s};
    }
    const double s = solve_phase_root(j, phase_coefficient(tau, kind), kind, cfg);
    return {kind, j, tau, s * s};
}

/// Normalization applied on top of the raw closed-form eigenfunction.
enum class Normalization {
    PaperRaw,  ///< the closed forms exactly as written, no rescaling
    SupOne,    ///< sup norm 1 on [-1,1]
    L2One,     ///< L2 norm 1 on [-1,1]
};

enum class Parity { Even, Odd };

namespace detail {

/// Exponential-difference form of the mu < 0 mode
/// s*cosh(s x) - tau*sinh(s x)*tanh(tau x), evaluated at |x| (it is even).
///
/// The growing term carries the coefficient s - tau*tanh(tau|x|), which in
/// the tail is a catastrophic difference of nearly equal numbers; it is
/// computed as (s - tau) + 2 tau/(1 + e^{2 tau |x|}), exact to rounding.
/// Factored by e^{s|x|} once the bare exponentials would overflow, so the
/// value degrades gracefully.
inline double negative_mode_raw(double x, double tau, double s) {
    const double ax = std::abs(x);
    const double w = tau * std::tanh(tau * ax);
    const double gap = (s - tau) + 2.0 * tau / (1.0 + std::exp(2.0 * tau * ax));
    if (s * ax <= 350.0)
        return 0.5 * (gap * std::exp(s * ax) + (s + w) * std::exp(-s * ax));
    return std::exp(s * ax) * (0.5 * (gap + (s + w) * std::exp(-2.0 * s * ax)));
}

}  // namespace detail

/**
 * @brief Closed-form eigenfunction attached to one EigenPair.
 *
 * raw(x) evaluates the printed closed forms verbatim (no cosh(tau) or
 * cos(tau) prefactor):
 *
 *   mu > 0, e^{u}:   sqrt(mu/tau^2 + tanh^2(tau x)) *
 *                    sin(sqrt(mu) x + arctan(tau tanh(tau x)/sqrt(mu)) + pi j/2)
 *   mu > 0, e^{-u}:  same with tan(tau x) and a minus sign on the arctan
 *   mu = 0:          tanh(tau) - x tanh(tau x)        (only at the fold, j = 1)
 *   mu < 0:          s cosh(s x) - tau sinh(s x) tanh(tau x),  s = sqrt(-mu)
 *
 * The quarter turns pi j/2 are applied exactly, so the parity
 * phi(-x) = (-1)^{j+1} phi(x) holds to rounding.  Instances are immutable
 * and safe to share across threads.
 */
class EigenfunctionProfile {
  public:
    explicit EigenfunctionProfile(const EigenPair& pair,
                                  Normalization norm = Normalization::PaperRaw)
        : pair_(pair),
          norm_(norm),
          parity_(pair.j % 2 == 1 ? Parity::Even : Parity::Odd) {
        sup_ = scan_sup();
        if (norm == Normalization::SupOne) {
            scale_ = 1.0 / sup_;
        } else if (norm == Normalization::L2One) {
            const double l2sq = adaptive_simpson(
                [this](double x) {
                    const double v = raw(x);
                    return v * v;
                },
                -1.0, 1.0, 1e-12, 40, 16);
            scale_ = 1.0 / std::sqrt(l2sq);
        } else {
            scale_ = 1.0;
        }
    }

    /// The closed form exactly as written.
    double raw(double x) const {
        require_x(x);
        const double tau = pair_.tau;
        const double mu = pair_.mu;
        if (mu == 0.0) return std::tanh(tau) - x * std::tanh(tau * x);
        if (mu < 0.0) return detail::negative_mode_raw(x, tau, std::sqrt(-mu));
        const double s = std::sqrt(mu);
        double t, phase;
        if (pair_.kind == ProblemKind::PlusExp) {
            t = std::tanh(tau * x);
            phase = s * x + std::atan(tau * t / s);
        } else {
            t = std::tan(tau * x);
            phase = s * x - std::atan(tau * t / s);
        }
        const double amp = std::sqrt(mu / (tau * tau) + t * t);
        return amp * sin_plus_quarter_turns(phase, pair_.j);
    }

    /// raw(x) times the normalization scale.
    double operator()(double x) const { return scale_ * raw(x); }

    const EigenPair& pair() const { return pair_; }
    Parity parity() const { return parity_; }
    Normalization normalization() const { return norm_; }
    double scale() const { return scale_; }
    /// sup of |raw| over [-1,1], measured on a 4097-point grid.
    double sup_norm() const { return sup_; }

  private:
    double scan_sup() const {
        constexpr int kSamples = 4096;
        double best = 0.0;
        for (int i = 0; i <= kSamples; ++i) {
            const double x = -1.0 + 2.0 * i / kSamples;
            best = std::max(best, std::abs(raw(x)));
        }
        return best;
    }

    EigenPair pair_;
    Normalization norm_;
    Parity parity_;
    double scale_;
    double sup_;
};

/**
 * @brief The oscillation phase theta(x) of the closed-form eigenfunction.
 *
 * mu > 0: sqrt(mu) x +- arctan(tau tanh/tan(tau x)/sqrt(mu)); odd in x,
 * equal to (pi/2) j at x = 1 when mu is an eigenvalue.  mu < 0 (e^{u} branch
 * past the fold): the hyperbolic phase -a tau x + artanh(tanh(tau x)/a) with
 * a = sqrt(-mu)/tau, defined only where |tanh(tau x)| < a.
 */
inline double phase_theta(double x, double tau, double mu, ProblemKind kind) {
    require_x(x);
    if (mu == 0.0) throw std::domain_error("phase undefined at mu = 0");
    if (mu > 0.0) {
        const double s = std::sqrt(mu);
        if (kind == ProblemKind::PlusExp) return s * x + std::atan(tau * std::tanh(tau * x) / s);
        return s * x - std::atan(tau * std::tan(tau * x) / s);
    }
    if (kind == ProblemKind::MinusExp)
        throw std::domain_error("negative eigenvalues occur only on the e^u branch");
    const double a = std::sqrt(-mu) / tau;
    const double t = std::tanh(tau * x);
    if (!(std::abs(t) < a))
        throw std::domain_error("x outside the validity interval of the hyperbolic phase");
    const double l = 0.5 * std::log((a + t) / (a - t));
    return a > 1.0 ? a * tau * x - l : -a * tau * x + l;
}

inline double phase_theta(double x, const EigenPair& pair) {
    return phase_theta(x, pair.tau, pair.mu, pair.kind);
}

/**
 * @brief Counts strict sign changes of the profile on a uniform interior
 *        grid; equals j - 1 for the j-th eigenfunction.
 */
inline int zero_crossings(const EigenfunctionProfile& profile, int grid_size = 4096) {
    if (grid_size < 64 * profile.pair().j)
        throw std::invalid_argument("grid too coarse for this mode index");
    int count = 0;
    double prev = 0.0;
    for (int i = 1; i < grid_size; ++i) {
        const double x = -1.0 + 2.0 * i / grid_size;
        const double v = profile(x);
        if (v == 0.0) continue;
        if (prev != 0.0 && (v < 0.0) != (prev < 0.0)) ++count;
        prev = v;
    }
    return count;
}

}  // namespace gelfand
