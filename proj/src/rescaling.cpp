#include "symdom/rescaling.hpp"

#include <algorithm>

#include "symdom/automorphisms.hpp"

namespace symdom {

namespace {

/// Aitken extrapolation from the last three terms; falls back to the last
/// term when the sequence has already settled.
Complex aitken(Complex x0, Complex x1, Complex x2) {
  const Complex d1 = x1 - x0, d2 = x2 - x1;
  const Complex den = d2 - d1;
  if (std::abs(den) < 1e-14 * (std::abs(d1) + std::abs(d2)) ||
      std::abs(den) < 1e-300)
    return x2;
  return x2 - d2 * d2 / den;
}

double aitken(double x0, double x1, double x2) {
  return aitken(Complex(x0, 0.0), Complex(x1, 0.0), Complex(x2, 0.0)).real();
}

}  // namespace

std::vector<Complex> default_rescale_grid() {
  std::vector<Complex> grid;
  grid.push_back(0.0);
  for (double r : {0.05, 0.1})
    for (int j = 0; j < 12; ++j) grid.push_back(std::polar(r, 2.0 * kPi * j / 12.0));
  return grid;
}

std::vector<Complex> default_rescale_schedule(Complex b, int steps) {
  std::vector<Complex> sched;
  for (int k = 1; k <= steps; ++k) sched.push_back((1.0 - std::pow(2.0, -k)) * b);
  return sched;
}

RescaleStep rescale_step(const CurveSpec& c, Complex wk,
                         const std::vector<Complex>& grid) {
  RescaleStep step;
  step.wk = wk;
  const VectorXcd zk = curve_eval(c, wk);
  if (!contains(c.domain, zk, 0.0))
    throw std::domain_error("rescale_step: mu(w_k) lies outside the domain");
  const Transvection T(c.domain, zk);
  const DiskMobius phi(wk);

  for (Complex zeta : grid) {
    const Complex w = phi(zeta);
    const VectorXcd z = curve_eval(c, w);
    if (!contains(c.domain, z, 0.0))
      throw std::domain_error(
          "rescale_step: grid point leaves the domain; shrink the grid radius");
    step.germ.push_back(T.apply(z));
    const NormalForm nf = normal_form(c.domain, {z, curve_deriv(c, w)});
    step.nf_grid.push_back(nf);
    step.sigma2_grid.push_back(second_fundamental_norm2(c, w));
    step.lambda_grid.push_back(pullback_coefficient(c, w) *
                               std::norm(phi.derivative(zeta)));
  }
  // Values at zeta = 0 (mu~_k(0) = 0 by construction).
  step.nf0 = normal_form(c.domain, {zk, curve_deriv(c, wk)});
  step.sigma2_0 = second_fundamental_norm2(c, wk);
  step.lambda0 = pullback_coefficient(c, wk) * std::norm(phi.derivative(0.0));
  return step;
}

RescaleReport rescale_sequence(const CurveSpec& c, Complex b,
                               const std::vector<Complex>& schedule,
                               const std::vector<Complex>& grid) {
  if (schedule.size() < 4)
    throw std::invalid_argument("rescale_sequence: need at least 4 steps");
  RescaleReport rep;
  rep.grid = grid;

  // Vanishing order of the source curve at b.
  std::vector<double> radii;
  for (int k = 2; k <= 10; ++k) radii.push_back(1.0 - std::pow(2.0, -k));
  const VanishingOrderFit vo = vanishing_order(c, b, radii);
  rep.m0 = vo.m;
  rep.verdicts.m0_consistent = vo.clean;

  int k = 1;
  for (Complex wk : schedule) {
    RescaleStep step = rescale_step(c, wk, grid);
    step.k = k++;
    if (!rep.steps.empty()) {
      double diff = 0.0;
      for (std::size_t g = 0; g < grid.size(); ++g)
        diff = std::max(diff,
                        (step.germ[g] - rep.steps.back().germ[g]).norm());
      step.cauchy = diff;
    }
    rep.steps.push_back(std::move(step));
  }

  // Convergence: Cauchy ratios over the last four steps.
  const int S = static_cast<int>(rep.steps.size());
  rep.verdicts.converged = true;
  for (int i = std::max(2, S - 4); i < S; ++i) {
    const double prev = rep.steps[i - 1].cauchy;
    const double cur = rep.steps[i].cauchy;
    if (cur <= 1e-12) continue;  // already at a fixed point
    const double ratio = cur / std::max(prev, 1e-300);
    rep.final_ratio = ratio;
    if (ratio > 0.7) {
      rep.verdicts.converged = false;
      if (rep.first_bad_step < 0) rep.first_bad_step = rep.steps[i].k;
    }
  }

  // Extrapolated limit germ and per-grid scalars from the last three steps.
  const RescaleStep& s0 = rep.steps[S - 3];
  const RescaleStep& s1 = rep.steps[S - 2];
  const RescaleStep& s2 = rep.steps[S - 1];
  const std::size_t G = grid.size();
  const int N = c.domain.dim();
  std::vector<double> nf_lim_first(G), sig_lim(G), lam_lim(G);
  std::vector<std::vector<double>> nf_lim(G);
  rep.limit_germ.resize(G);
  for (std::size_t g = 0; g < G; ++g) {
    VectorXcd lim(N);
    for (int i = 0; i < N; ++i)
      lim[i] = aitken(s0.germ[g][i], s1.germ[g][i], s2.germ[g][i]);
    rep.limit_germ[g] = lim;
    const std::size_t R = s2.nf_grid[g].values.size();
    nf_lim[g].resize(R);
    for (std::size_t r = 0; r < R; ++r)
      nf_lim[g][r] = aitken(s0.nf_grid[g].values[r], s1.nf_grid[g].values[r],
                            s2.nf_grid[g].values[r]);
    sig_lim[g] = aitken(s0.sigma2_grid[g], s1.sigma2_grid[g], s2.sigma2_grid[g]);
    lam_lim[g] = aitken(s0.lambda_grid[g], s1.lambda_grid[g], s2.lambda_grid[g]);
  }
  rep.limit_nf0.values = nf_lim[0];
  rep.limit_nf0.rank = 0;
  for (double v : nf_lim[0])
    if (v > kRankTol) ++rep.limit_nf0.rank;
  rep.limit_sigma2 = sig_lim[0];

  for (std::size_t g = 0; g < G; ++g) {
    double nfdev = 0.0;
    for (std::size_t r = 0; r < nf_lim[g].size(); ++r)
      nfdev = std::max(nfdev, std::abs(nf_lim[g][r] - nf_lim[0][r]));
    rep.nf_grid_dev = std::max(rep.nf_grid_dev, nfdev);
    rep.sigma2_grid_dev =
        std::max(rep.sigma2_grid_dev, std::abs(sig_lim[g] - sig_lim[0]));
    const double target =
        rep.m0 / std::pow(1.0 - std::norm(grid[g]), 2.0);
    rep.isometry_rel_dev =
        std::max(rep.isometry_rel_dev, std::abs(lam_lim[g] / target - 1.0));
  }
  rep.verdicts.nf_grid_constant = rep.nf_grid_dev <= 1e-3;
  rep.verdicts.sigma2_grid_constant = rep.sigma2_grid_dev <= 1e-3;
  rep.verdicts.isometry_ok = rep.isometry_rel_dev <= 0.02;

  // Boundary value of sigma^2 along the source curve, extrapolated on an
  // offset radius sequence (independent of the schedule points).
  std::vector<double> sig_src;
  for (int j = 3; j <= 12; ++j)
    sig_src.push_back(
        second_fundamental_norm2(c, (1.0 - 0.75 * std::pow(2.0, -j)) * b));
  const std::size_t M = sig_src.size();
  rep.sigma2_boundary = aitken(sig_src[M - 3], sig_src[M - 2], sig_src[M - 1]);
  rep.verdicts.sigma2_matches_boundary =
      std::abs(rep.limit_sigma2 - rep.sigma2_boundary) <= 1e-3;
  return rep;
}

}  // namespace symdom
