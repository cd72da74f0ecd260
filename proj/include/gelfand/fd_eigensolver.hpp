#pragma once

/**
 * @file fd_eigensolver.hpp
 * @brief Independent finite-difference Sturm-Liouville oracle for
 *        -phi'' - q(x) phi = mu phi on (-1,1), phi(+-1) = 0.
 *
 * Central second differences on n interior points of a uniform mesh give a
 * symmetric tridiagonal matrix; its eigenvalues are found by Sturm-sequence
 * bisection (inertia counts) and sharpened by Richardson extrapolation over
 * a mesh pair (n, 2n+1), which halves the step exactly.  Eigenvectors come
 * from inverse iteration with tridiagonal (Thomas) solves.
 *
 * This path shares no code with the closed-form spectrum and is the
 * verification reference for it.
 */

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gelfand/branch.hpp"

namespace gelfand {

/**
 * @brief Discrete operator: diag[i] = 2/h^2 - q(x_i), constant off-diagonal
 *        -1/h^2, mesh x_i = -1 + (i+1) h with h = 2/(n+1), i = 0..n-1.
 */
struct TridiagonalOperator {
    int n = 0;
    double h = 0.0;
    double off = 0.0;  ///< the common off-diagonal entry -1/h^2
    std::vector<double> diag;

    double grid_x(int i) const { return -1.0 + (i + 1) * h; }
};

/// Builds the discrete operator for an arbitrary potential q (the signed
/// coefficient of phi in phi'' + q phi = -mu phi).
template <class Q>
TridiagonalOperator make_operator(int n, Q&& q) {
    if (n < 1) throw std::invalid_argument("need at least one interior point");
    TridiagonalOperator t;
    t.n = n;
    t.h = 2.0 / (n + 1);
    const double inv_h2 = 1.0 / (t.h * t.h);
    t.off = -inv_h2;
    t.diag.resize(n);
    for (int i = 0; i < n; ++i) t.diag[i] = 2.0 * inv_h2 - q(t.grid_x(i));
    return t;
}

/// Discretizes the linearization at branch parameter tau.  Intended for
/// n >= 32; smaller meshes are allowed for direct construction checks.
inline TridiagonalOperator discretize(double tau, ProblemKind kind, int n) {
    require_tau(tau, kind);
    return make_operator(n, [&](double x) { return linearized_potential(x, tau, kind); });
}

/// Number of eigenvalues of the operator strictly below s, by the Sturm
/// pivot recursion.  Pivots smaller than 1e-300 * 2/h^2 are replaced by that
/// floor (negated), which cannot change a count at any representable gap.
inline int count_below(const TridiagonalOperator& t, double s) {
    const double off2 = t.off * t.off;
    const double pivot_floor = 1e-300 * (2.0 / (t.h * t.h));
    int count = 0;
    double d = 1.0;
    for (int i = 0; i < t.n; ++i) {
        d = (t.diag[i] - s) - (i > 0 ? off2 / d : 0.0);
        if (std::abs(d) < pivot_floor) d = -pivot_floor;
        if (d < 0.0) ++count;
    }
    return count;
}

/// Gershgorin enclosure of the whole discrete spectrum.
struct SpectralBounds {
    double lo;
    double hi;
};

inline SpectralBounds gershgorin_bounds(const TridiagonalOperator& t) {
    double lo = t.diag[0], hi = t.diag[0];
    for (int i = 0; i < t.n; ++i) {
        const double radius = std::abs(t.off) * (i == 0 || i == t.n - 1 ? 1.0 : 2.0);
        lo = std::min(lo, t.diag[i] - radius);
        hi = std::max(hi, t.diag[i] + radius);
    }
    if (t.n == 1) return {t.diag[0], t.diag[0]};
    return {lo, hi};
}

/// The k lowest discrete eigenvalues, ascending.
struct OracleEigenResult {
    std::vector<double> mu_values;
    int n = 0;             ///< interior points of the mesh used
    bool extrapolated = false;
};

/**
 * @brief Computes the k smallest eigenvalues by bisection on inertia counts,
 *        each to bracket width tol.
 */
inline OracleEigenResult lowest_eigenvalues(const TridiagonalOperator& t, int k,
                                            double tol = 1e-11) {
    if (k < 1 || k > t.n) throw std::invalid_argument("eigenvalue count out of range");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const SpectralBounds bounds = gershgorin_bounds(t);
    OracleEigenResult result;
    result.n = t.n;
    result.mu_values.reserve(k);
    double floor = bounds.lo;
    for (int j = 1; j <= k; ++j) {
        double lo = floor, hi = bounds.hi;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;  // machine resolution reached
            (count_below(t, mid) >= j ? hi : lo) = mid;
        }
        const double mu = 0.5 * (lo + hi);
        result.mu_values.push_back(mu);
        floor = mu - tol;  // the next eigenvalue cannot lie below this
    }
    return result;
}

/// Classic h^2 -> h^2/4 Richardson combination of eigenvalues computed on
/// meshes with steps h and h/2.
inline double richardson(double mu_coarse, double mu_fine) {
    return (4.0 * mu_fine - mu_coarse) / 3.0;
}

/**
 * @brief Richardson-extrapolated j-th eigenvalue of the linearization at tau,
 *        using the mesh pair (n, 2n+1).
 */
inline double oracle_mu(double tau, ProblemKind kind, int j, int n, double tol = 1e-11) {
    const TridiagonalOperator coarse = discretize(tau, kind, n);
    const TridiagonalOperator fine = discretize(tau, kind, 2 * n + 1);
    const double mu_c = lowest_eigenvalues(coarse, j, tol).mu_values[j - 1];
    const double mu_f = lowest_eigenvalues(fine, j, tol).mu_values[j - 1];
    return richardson(mu_c, mu_f);
}

namespace detail {

/// Thomas solve of (T - shift I) w = rhs.  Returns false when a pivot is
/// essentially zero (the shift is numerically an eigenvalue of a leading
/// submatrix), in which case the caller retries with a perturbed shift.
inline bool shifted_solve(const TridiagonalOperator& t, double shift,
                          const std::vector<double>& rhs, std::vector<double>& w) {
    const int n = t.n;
    const double tiny = 1e-300 * (2.0 / (t.h * t.h));
    std::vector<double> c(n), d(n);
    double piv = t.diag[0] - shift;
    if (std::abs(piv) < tiny) return false;
    c[0] = t.off / piv;
    d[0] = rhs[0] / piv;
    for (int i = 1; i < n; ++i) {
        piv = (t.diag[i] - shift) - t.off * c[i - 1];
        if (std::abs(piv) < tiny) return false;
        c[i] = t.off / piv;
        d[i] = (rhs[i] - t.off * d[i - 1]) / piv;
    }
    w.resize(n);
    w[n - 1] = d[n - 1];
    for (int i = n - 2; i >= 0; --i) w[i] = d[i] - c[i] * w[i + 1];
    return true;
}

inline void normalize_l2(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    const double inv = 1.0 / std::sqrt(s);
    for (double& x : v) x *= inv;
}

}  // namespace detail

/**
 * @brief Inverse iteration for the eigenvector at the (near-)eigenvalue mu.
 *
 * Starts from a fixed pseudo-random vector (64-bit LCG, constant seed), so
 * results are bit-reproducible.  If the shifted solve meets an exactly
 * singular pivot the shift is perturbed by 1e-10 and the solve retried.
 * The sign is fixed so the first nonnegligible component at a grid point
 * x > 0 is positive.
 */
inline std::vector<double> inverse_iteration(const TridiagonalOperator& t, double mu,
                                             int iterations = 4) {
    if (iterations < 1) throw std::invalid_argument("need at least one iteration");
    const int n = t.n;
    std::vector<double> v(n);
    std::uint64_t state = 0x9E3779B97F4A7C15ull;
    for (int i = 0; i < n; ++i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        v[i] = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    }
    detail::normalize_l2(v);
    std::vector<double> w;
    for (int it = 0; it < iterations; ++it) {
        if (!detail::shifted_solve(t, mu, v, w) &&
            !detail::shifted_solve(t, mu + 1e-10, v, w))
            throw std::runtime_error("inverse iteration: shifted solve stayed singular");
        detail::normalize_l2(w);
        v.swap(w);
    }
    // first grid index with x > 0
    int i0 = 0;
    while (i0 < n && !(t.grid_x(i0) > 0.0)) ++i0;
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    for (int i = i0; i < n; ++i) {
        if (std::abs(v[i]) > 1e-12 * peak) {
            if (v[i] < 0.0)
                for (double& x : v) x = -x;
            break;
        }
    }
    return v;
}

/// Analytic eigenvalues of the q = 0 discrete operator:
/// (4/h^2) sin^2(j pi h / 4) on the mesh with step h = 2/(n+1).
inline double free_discrete_eigenvalue(int n, int j) {
    const double h = 2.0 / (n + 1);
    const double s = std::sin(0.25 * j * kPi * h);
    return 4.0 / (h * h) * s * s;
}

}  // namespace gelfand
