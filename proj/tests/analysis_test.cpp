#include "gelfand/analysis.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "gelfand/quadrature.hpp"

using namespace gelfand;

namespace {

constexpr double kSqrtTwoPi_ = 4.4428829381583662;      // sqrt(2) * pi
constexpr double kScaledCenterTwo = 0.91581133328382298;  // sqrt(-mu_1(2))/2
constexpr double kMinusCosQuarterPi = -0.70710678118654752;

TEST(MassIntegral, ClosedFormAndAsymptotes) {
    // the closed form collapses to 4 tau tanh(tau)
    for (double tau : {0.3, 1.0, 2.5, 10.0})
        EXPECT_NEAR(mass_integral(tau) / (4.0 * tau * std::tanh(tau)), 1.0, 1e-13);
    // ~ 4 tau^2 at the low end, ~ 4 tau at the high end
    EXPECT_LE(mass_integral(1e-4), 1e-3);
    EXPECT_NEAR(mass_integral(1e-4) / (4.0e-8), 1.0, 1e-2);
    EXPECT_GE(mass_integral(50.0), 100.0);
    EXPECT_NEAR(mass_integral(50.0), 200.0, 1e-6);
    // and it really is the integral of lambda e^u
    const double quad = adaptive_simpson(
        [](double x) { return potential_q(x, 0.8, ProblemKind::PlusExp); }, -1.0, 1.0, 1e-11);
    EXPECT_NEAR(mass_integral(0.8) / quad, 1.0, 1e-9);
    EXPECT_THROW(mass_integral(0.0), std::domain_error);
}

TEST(SqrtMassIntegral, SaturatesAtSqrtTwoPi) {
    EXPECT_NEAR(sqrt_mass_integral(40.0), kSqrtTwoPi_, 1e-10);
    EXPECT_NEAR(sqrt_mass_integral(1e-4) / (2.0 * std::sqrt(2.0) * 1e-4), 1.0, 1e-3);
    double prev = 0.0;
    for (double tau : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double v = sqrt_mass_integral(tau);
        EXPECT_GT(v, prev);
        EXPECT_LT(v, kSqrtTwoPi_);
        prev = v;
    }
    const double quad = adaptive_simpson(
        [](double x) { return std::sqrt(potential_q(x, 0.8, ProblemKind::PlusExp)); }, -1.0,
        1.0, 1e-11);
    EXPECT_NEAR(sqrt_mass_integral(0.8) / quad, 1.0, 1e-9);
    EXPECT_THROW(sqrt_mass_integral(-1.0), std::domain_error);
}

TEST(ScaledFirstEigenfunction, ConvergesToSech) {
    double worst = 0.0;
    for (int i = 0; i <= 120; ++i) {
        const double y = -5.0 + 10.0 * i / 120;
        worst = std::max(worst,
                         std::abs(scaled_first_eigenfunction(y, 50.0) - 1.0 / std::cosh(y)));
    }
    EXPECT_LE(worst, 1e-4);
}

TEST(ScaledFirstEigenfunction, CenterValueAndDomain) {
    EXPECT_NEAR(scaled_first_eigenfunction(0.0, 2.0), kScaledCenterTwo, 1e-12);
    EXPECT_THROW(scaled_first_eigenfunction(0.0, 1.0), std::domain_error);   // before the fold
    EXPECT_THROW(scaled_first_eigenfunction(3.0, 2.0), std::domain_error);   // |y| > tau
}

TEST(LimitProfile, PointValuesAndBoundaryZeros) {
    EXPECT_NEAR(limit_profile(2, 0.5, ProblemKind::PlusExp), kMinusCosQuarterPi, 1e-15);
    for (int j = 2; j <= 5; ++j) {
        EXPECT_LE(std::abs(limit_profile(j, 1.0, ProblemKind::PlusExp)), 1e-15) << "j=" << j;
        EXPECT_LE(std::abs(limit_profile(j, -1.0, ProblemKind::PlusExp)), 1e-15) << "j=" << j;
    }
    EXPECT_THROW(limit_profile(1, 0.5, ProblemKind::PlusExp), std::invalid_argument);
    EXPECT_THROW(limit_profile(2, 0.0, ProblemKind::PlusExp), std::domain_error);
    EXPECT_THROW(limit_profile(2, 1.2, ProblemKind::PlusExp), std::domain_error);
    EXPECT_THROW(limit_profile(1, 1.0, ProblemKind::MinusExp), std::domain_error);
    EXPECT_THROW(limit_profile(0, 0.5, ProblemKind::MinusExp), std::invalid_argument);
}

TEST(LimitProfile, HighTauEigenfunctionsApproachIt) {
    // e^u branch at tau = 200, away from the interior jump at 0
    {
        const EigenfunctionProfile phi(mu_exact(3, 200.0, ProblemKind::PlusExp));
        double worst = 0.0;
        for (int i = 0; i <= 40; ++i) {
            const double x = 0.05 + 0.95 * i / 40;
            worst = std::max(worst,
                             std::abs(phi.raw(x) - limit_profile(3, x, ProblemKind::PlusExp)));
            worst = std::max(worst,
                             std::abs(phi.raw(-x) - limit_profile(3, -x, ProblemKind::PlusExp)));
        }
        EXPECT_LE(worst, 0.05);
    }
    // e^{-u} branch as tau -> pi/2
    for (int j : {1, 2}) {
        const double tau = kHalfPi - 1e-4;
        const EigenfunctionProfile phi(mu_exact(j, tau, ProblemKind::MinusExp));
        double worst = 0.0;
        for (int i = 0; i <= 36; ++i) {
            const double x = -0.9 + 1.8 * i / 36;
            worst = std::max(worst,
                             std::abs(phi.raw(x) - limit_profile(j, x, ProblemKind::MinusExp)));
        }
        EXPECT_LE(worst, 0.05) << "j=" << j;
    }
}

TEST(WeakLimit, ConcentratesToPiTimesTheCenterValue) {
    const auto one = [](double) { return 1.0; };
    EXPECT_NEAR(weak_limit_check(100.0, one), kPi, 1e-6);
    EXPECT_NEAR(weak_limit_check(100.0, [](double x) { return std::cos(x); }), kPi, 0.05);
    EXPECT_NEAR(weak_limit_check(100.0, [](double x) { return std::exp(-x * x); }), kPi, 0.05);
    // odd test functions integrate to zero against the even spike
    EXPECT_LE(std::abs(weak_limit_check(100.0, [](double x) { return x * x * x; })), 1e-8);
    EXPECT_THROW(weak_limit_check(1.0, one), std::domain_error);
}

TEST(WeakLimit, DeviationShrinksWithTau) {
    for (auto g : {+[](double x) { return std::cos(x); },
                   +[](double x) { return std::exp(-x * x); }}) {
        const double dev20 = std::abs(weak_limit_check(20.0, g) - kPi);
        const double dev100 = std::abs(weak_limit_check(100.0, g) - kPi);
        EXPECT_LT(dev100, dev20);
    }
}

TEST(MuLimitTargets, EndpointValues) {
    EXPECT_EQ(mu_limit_targets(1, ProblemKind::PlusExp).low_tau, kHalfPi);
    EXPECT_TRUE(std::isinf(mu_limit_targets(1, ProblemKind::PlusExp).high_tau));
    EXPECT_LT(mu_limit_targets(1, ProblemKind::PlusExp).high_tau, 0.0);
    EXPECT_EQ(mu_limit_targets(4, ProblemKind::PlusExp).low_tau, kHalfPi * 4);
    EXPECT_EQ(mu_limit_targets(4, ProblemKind::PlusExp).high_tau, kHalfPi * 3);
    EXPECT_EQ(mu_limit_targets(4, ProblemKind::MinusExp).low_tau, kHalfPi * 4);
    EXPECT_EQ(mu_limit_targets(4, ProblemKind::MinusExp).high_tau, kHalfPi * 5);
    EXPECT_THROW(mu_limit_targets(0, ProblemKind::PlusExp), std::invalid_argument);
}

TEST(MuLimitTargets, BranchesApproachThemMonotonically) {
    // sqrt(mu_j) drifts down to (pi/2)(j-1) on the e^u branch, monotonically
    for (int j = 2; j <= 5; ++j) {
        const double target = mu_limit_targets(j, ProblemKind::PlusExp).high_tau;
        double prev_dev = std::numeric_limits<double>::infinity();
        for (double tau : {10.0, 20.0, 40.0, 80.0}) {
            const double dev =
                std::abs(std::sqrt(mu_exact(j, tau, ProblemKind::PlusExp).mu) - target);
            EXPECT_LT(dev, prev_dev) << "j=" << j << " tau=" << tau;
            prev_dev = dev;
        }
    }
    // mu_1 runs away to -infinity past the fold
    double prev = 0.0;
    for (double tau : {2.0, 4.0, 8.0, 15.0}) {
        const double mu = mu_exact(1, tau, ProblemKind::PlusExp).mu;
        EXPECT_LT(mu, prev);
        prev = mu;
    }
    EXPECT_LT(prev, -100.0);
}

}  // namespace
