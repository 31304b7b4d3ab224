#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace symdom {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Default rank tolerance on normal-form values.
inline constexpr double kRankTol = 1e-7;

/// Points closer to the boundary than this are refused by the
/// finite-difference metric/curvature paths unless overridden.
inline constexpr double kNearBoundaryLimit = 1e-3;

/// Deterministic random source. std::uniform_real_distribution is
/// implementation-defined, so all draws go through the raw engine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0,1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard complex Gaussian (Box-Muller), E|z|^2 = 1.
  Complex gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-std::log(u1));
    return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
  }

  VectorXcd gaussian_vector(int n) {
    VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = gaussian();
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace symdom
