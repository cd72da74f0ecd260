#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace testutil {

/// |a - b| measured in ulps of the larger magnitude.
inline double ulps_between(double a, double b) {
    if (a == b) return 0.0;
    const double m = std::max(std::abs(a), std::abs(b));
    const double ulp = std::nextafter(m, std::numeric_limits<double>::infinity()) - m;
    return std::abs(a - b) / ulp;
}

/// Deterministic uniform [0,1) stream (64-bit LCG), identical on every run.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed * 2862933555777941757ull + 1) {}
    double uniform() {
        state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<double>(state_ >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  private:
    std::uint64_t state_;
};

/// Central difference (f(x+d) - f(x-d)) / 2d.
template <class F>
double central_diff(F&& f, double x, double d) {
    return (f(x + d) - f(x - d)) / (2.0 * d);
}

}  // namespace testutil
