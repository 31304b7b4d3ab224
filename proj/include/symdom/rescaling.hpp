#pragma once

#include "symdom/curves.hpp"

namespace symdom {

/// One step of the rescaling sequence mu~_k = Phi_k o mu o phi_k, sampled
/// on a fixed grid around 0. mu~_k(0) = 0 by construction.
struct RescaleStep {
  int k = 0;
  Complex wk;
  std::vector<VectorXcd> germ;       // mu~_k at the grid points
  NormalForm nf0;                    // normal form of the unit tangent at 0
  double sigma2_0 = 0.0;
  double lambda0 = 0.0;              // pullback coefficient of mu~_k at 0
  double cauchy = 0.0;               // sup-difference to the previous step
  std::vector<NormalForm> nf_grid;
  std::vector<double> sigma2_grid;
  std::vector<double> lambda_grid;
};

struct RescaleVerdicts {
  bool converged = false;
  bool nf_grid_constant = false;
  bool sigma2_grid_constant = false;
  bool isometry_ok = false;             // limit pullback = m0 * g_Delta
  bool sigma2_matches_boundary = false;
  bool m0_consistent = false;           // m0 equals the vanishing order
};

struct RescaleReport {
  std::vector<Complex> grid;
  std::vector<RescaleStep> steps;
  int m0 = 0;
  double final_ratio = 0.0;
  int first_bad_step = -1;  // first step whose Cauchy ratio exceeded 0.7
  std::vector<VectorXcd> limit_germ;
  NormalForm limit_nf0;
  double limit_sigma2 = 0.0;
  double sigma2_boundary = 0.0;  // extrapolated along the source curve
  double nf_grid_dev = 0.0;
  double sigma2_grid_dev = 0.0;
  double isometry_rel_dev = 0.0;
  RescaleVerdicts verdicts;
};

/// Default grid: 0 plus 12 points each on |zeta| = 0.05 and |zeta| = 0.1.
std::vector<Complex> default_rescale_grid();

/// Default schedule w_k = (1 - 2^{-k}) b, k = 1..12.
std::vector<Complex> default_rescale_schedule(Complex b, int steps = 12);

RescaleStep rescale_step(const CurveSpec& c, Complex wk,
                         const std::vector<Complex>& grid);

RescaleReport rescale_sequence(const CurveSpec& c, Complex b,
                               const std::vector<Complex>& schedule,
                               const std::vector<Complex>& grid);

}  // namespace symdom
