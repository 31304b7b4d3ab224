#pragma once

#include "symdom/normal_forms.hpp"

namespace symdom {

/// A holomorphic polynomial curve mu: U -> C^N with a marked boundary point
/// b0 on the unit circle; mu is expected to map U cap Delta into the domain
/// and the declared boundary arc into the boundary.
struct CurveSpec {
  DomainSpec domain = DomainSpec::disk();
  std::vector<std::vector<Complex>> coeffs;  // per coordinate, ascending powers
  Complex b0 = 1.0;
  double valid_radius = 0.2;
  MetricKind metric = MetricKind::KE;
};

VectorXcd curve_eval(const CurveSpec& c, Complex w);
VectorXcd curve_deriv(const CurveSpec& c, Complex w);

/// lambda(w) = g(mu'(w), mu'(w)) at mu(w): the pullback metric coefficient.
/// Computed exactly from the polarized log generic norm.
double pullback_coefficient(const CurveSpec& c, Complex w);

/// Gaussian curvature kappa(w) = -lambda^{-1} dd-bar log lambda of the
/// pulled-back metric; exact for polynomial curves.
double gaussian_curvature(const CurveSpec& c, Complex w);

/// |sigma|^2 = R_{eta etabar eta etabar} - kappa(w) by the Gauss equation,
/// with eta the g-unit tangent of the curve at mu(w).
double second_fundamental_norm2(const CurveSpec& c, Complex w);

struct VanishingOrderFit {
  int m = 0;            // rounded slope
  double slope = 0.0;   // least-squares slope of log h against log(1 - t^2)
  double residual = 0.0;  // |slope - m|
  double rms = 0.0;     // fit rms
  bool clean = false;   // residual <= 0.1
};

/// Vanishing order of -rho(mu(t b)) as t -> 1; with bergman_exponent the
/// same regression runs on log Q = sum genus_f log h_f.
VanishingOrderFit vanishing_order(const CurveSpec& c, Complex b,
                                  const std::vector<double>& radii,
                                  bool bergman_exponent = false);

struct CurvatureFit {
  int m = 0;
  double C = 0.0;               // max |kappa + 2/m| / delta^2 over the radii
  std::vector<double> ratios;   // |kappa + 2/m| / delta^2 per radius
  bool bounded = false;         // ratios do not blow up toward the boundary
};

/// Fits kappa(t b) + 2/m against delta^2 (the asymptotic curvature law).
CurvatureFit asymptotic_curvature_fit(const CurveSpec& c, Complex b,
                                      const std::vector<double>& radii);

std::vector<std::pair<Complex, NormalForm>> tangent_rank_profile(
    const CurveSpec& c, const std::vector<Complex>& samples);

struct CurveProfileRow {
  Complex w;
  double delta;    // 1 - |w|
  double lambda;
  double kappa;
  double sigma2;
  int rank;
  NormalForm nf;
};

CurveProfileRow curve_profile_at(const CurveSpec& c, Complex w);

struct CurveCheck {
  bool interior_ok = true;      // sampled interior points land inside
  bool boundary_ok = true;      // sampled arc points land on the boundary
  bool immersed_ok = true;      // mu' != 0 at sampled interior points
  double max_boundary_h = 0.0;  // largest |h| seen on the arc
};

/// Sampled validation of the CurveSpec invariants.
CurveCheck curve_check(const CurveSpec& c, int samples = 64);

}  // namespace symdom
