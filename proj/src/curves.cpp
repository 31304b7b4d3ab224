#include "symdom/curves.hpp"

#include <algorithm>
#include <limits>

#include "symdom/automorphisms.hpp"
#include "symdom/detail/taylor22.hpp"

namespace symdom {

namespace {

using detail::Taylor22;

/// Taylor coefficients (p, p', p''/2) of one coordinate polynomial at w0.
std::array<Complex, 3> poly_taylor(const std::vector<Complex>& coeffs,
                                   Complex w0) {
  Complex p0 = 0.0, p1 = 0.0, p2 = 0.0;  // value, first, second/2 (Horner)
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    p2 = p2 * w0 + p1;
    p1 = p1 * w0 + p0;
    p0 = p0 * w0 + *it;
  }
  return {p0, p1, p2};
}

/// Weight of one atom's -log h contribution under the chosen metric.
double atom_weight(const Atom& a, MetricKind which) {
  const double half = (a.kind == Kind::TypeII) ? 0.5 : 1.0;
  return (which == MetricKind::Bergman) ? half * a.genus : half;
}

/// Mixed partials up to order (2,2) of F(w, vbar) = -log h(mu(w), mu(v)) at
/// the diagonal v = w. Holomorphic in w and in u = vbar, so the expansion is
/// an honest bivariate Taylor polynomial.
Taylor22 log_potential_series(const CurveSpec& c, Complex w0) {
  const DomainSpec& d = c.domain;
  const int N = d.dim();
  if (static_cast<int>(c.coeffs.size()) != N)
    throw std::invalid_argument("curve: coefficient rows must match the domain dimension");

  // Z_j(s): coordinate Taylor at w0; Zc_j(t): conjugate coefficients at
  // conj(w0) (the antiholomorphic side as a polynomial in u = vbar).
  std::vector<Taylor22> Z(N), Zc(N);
  for (int j = 0; j < N; ++j) {
    const auto tj = poly_taylor(c.coeffs[j], w0);
    Taylor22 z;
    z.c[0][0] = tj[0];
    z.c[1][0] = tj[1];
    z.c[2][0] = tj[2];
    Z[j] = z;
    Taylor22 zc;
    zc.c[0][0] = std::conj(tj[0]);
    zc.c[0][1] = std::conj(tj[1]);
    zc.c[0][2] = std::conj(tj[2]);
    Zc[j] = zc;
  }

  Taylor22 F = Taylor22::constant(0.0);
  for (const auto& a : d.atoms()) {
    const double wgt = atom_weight(a, c.metric);
    if (a.kind == Kind::TypeIV) {
      Taylor22 dot = Taylor22::constant(0.0);
      Taylor22 zz = Taylor22::constant(0.0);
      Taylor22 cc = Taylor22::constant(0.0);
      for (int i = 0; i < a.dim; ++i) {
        const Taylor22& z = Z[a.offset + i];
        const Taylor22& zcc = Zc[a.offset + i];
        dot += z * zcc;
        zz += z * z;
        cc += zcc * zcc;
      }
      const Taylor22 h = Taylor22::constant(1.0) - 2.0 * dot + zz * cc;
      F -= wgt * h.log();
      continue;
    }
    // Matrix kinds: -wgt * log det(I - Z(s) Zc(t)^T) on the smaller side.
    VectorXcd es = VectorXcd::Zero(a.dim);
    // Build matrix views whose entries are Taylor22: unpack the packed
    // segment symbolically through the fixed linear packing.
    const int rows = (a.kind == Kind::TypeI) ? a.p : a.n;
    const int cols = (a.kind == Kind::TypeI) ? a.q : a.n;
    std::vector<Taylor22> Zm(rows * cols, Taylor22::constant(0.0));
    std::vector<Taylor22> Cm(rows * cols, Taylor22::constant(0.0));
    for (int k = 0; k < a.dim; ++k) {
      es.setZero();
      es[k] = 1.0;
      const MatrixXcd view = unpack(a, es);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
          if (view(i, j) == Complex(0.0, 0.0)) continue;
          Zm[i * cols + j] += view(i, j) * Z[a.offset + k];
          Cm[i * cols + j] += view(i, j) * Zc[a.offset + k];
        }
    }
    std::vector<Taylor22> M(rows * rows, Taylor22::constant(0.0));
    for (int i = 0; i < rows; ++i) {
      M[i * rows + i] = Taylor22::constant(1.0);
      for (int l = 0; l < rows; ++l) {
        Taylor22 acc = Taylor22::constant(0.0);
        for (int k = 0; k < cols; ++k) acc += Zm[i * cols + k] * Cm[l * cols + k];
        M[i * rows + l] -= acc;
      }
    }
    F -= wgt * detail::logdet(std::move(M), rows);
  }
  return F;
}

double metric0_norm_sq(const DomainSpec& d, const VectorXcd& v, MetricKind which) {
  const VectorXd w = metric_weights(d);
  double s = 0.0;
  for (const auto& a : d.atoms()) {
    const double g = (which == MetricKind::Bergman) ? double(a.genus) : 1.0;
    for (int i = a.offset; i < a.offset + a.dim; ++i)
      s += g * w[i] * std::norm(v[i]);
  }
  return s;
}

void check_in_domain(const CurveSpec& c, Complex w, const VectorXcd& z) {
  if (std::abs(w) >= 1.0)
    throw std::domain_error("curve: w must lie inside the unit disk");
  if (!contains(c.domain, z, 0.0))
    throw std::domain_error("curve: image point outside the domain");
}

struct LinearFit {
  double slope, intercept, rms;
};

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  double rss = 0;
  for (int i = 0; i < n; ++i) {
    const double r = y[i] - slope * x[i] - intercept;
    rss += r * r;
  }
  return {slope, intercept, std::sqrt(rss / n)};
}

}  // namespace

VectorXcd curve_eval(const CurveSpec& c, Complex w) {
  const int N = static_cast<int>(c.coeffs.size());
  VectorXcd z(N);
  for (int j = 0; j < N; ++j) z[j] = poly_taylor(c.coeffs[j], w)[0];
  return z;
}

VectorXcd curve_deriv(const CurveSpec& c, Complex w) {
  const int N = static_cast<int>(c.coeffs.size());
  VectorXcd z(N);
  for (int j = 0; j < N; ++j) z[j] = poly_taylor(c.coeffs[j], w)[1];
  return z;
}

double pullback_coefficient(const CurveSpec& c, Complex w) {
  check_in_domain(c, w, curve_eval(c, w));
  const Taylor22 F = log_potential_series(c, w);
  return F(1, 1).real();
}

double gaussian_curvature(const CurveSpec& c, Complex w) {
  check_in_domain(c, w, curve_eval(c, w));
  const Taylor22 F = log_potential_series(c, w);
  const Complex lam = F(1, 1);
  const Complex lam_w = 2.0 * F(2, 1);
  const Complex lam_vb = 2.0 * F(1, 2);
  const Complex lam_wvb = 4.0 * F(2, 2);
  const Complex ddbar_log = (lam_wvb * lam - lam_w * lam_vb) / (lam * lam);
  return (-ddbar_log / lam).real();
}

double second_fundamental_norm2(const CurveSpec& c, Complex w) {
  const VectorXcd z = curve_eval(c, w);
  check_in_domain(c, w, z);
  const VectorXcd dz = curve_deriv(c, w);
  VectorXcd eta0;
  if (z.isZero(0.0)) {
    eta0 = dz;
  } else {
    const Transvection T(c.domain, z);
    eta0 = T.differential(z, dz);
  }
  const double nsq = metric0_norm_sq(c.domain, eta0, c.metric);
  if (nsq < 1e-300)
    throw std::domain_error("second_fundamental_norm2: vanishing tangent");
  eta0 /= std::sqrt(nsq);
  const double R =
      curvature_at_origin(c.domain, eta0, eta0, eta0, eta0, c.metric).real();
  return R - gaussian_curvature(c, w);
}

VanishingOrderFit vanishing_order(const CurveSpec& c, Complex b,
                                  const std::vector<double>& radii,
                                  bool bergman_exponent) {
  if (radii.size() < 2)
    throw std::invalid_argument("vanishing_order: need at least two radii");
  std::vector<double> x, y;
  for (double t : radii) {
    if (!(t > 0.0 && t < 1.0))
      throw std::invalid_argument("vanishing_order: radii must lie in (0,1)");
    const VectorXcd z = curve_eval(c, t * b);
    if (!contains(c.domain, z, 0.0))
      throw std::domain_error("vanishing_order: curve leaves the domain before the boundary");
    x.push_back(std::log(1.0 - t * t));
    if (!bergman_exponent) {
      y.push_back(std::log(generic_norm(c.domain, z)));
    } else {
      double s = 0.0;
      const auto hs = factor_generic_norms(c.domain, z);
      const auto gs = c.domain.genus_per_factor();
      for (std::size_t f = 0; f < hs.size(); ++f) s += gs[f] * std::log(hs[f]);
      y.push_back(s);
    }
  }
  const LinearFit fit = least_squares(x, y);
  VanishingOrderFit out;
  out.slope = fit.slope;
  out.m = static_cast<int>(std::lround(fit.slope));
  out.residual = std::abs(fit.slope - out.m);
  out.rms = fit.rms;
  out.clean = out.residual <= 0.1 && out.m >= 1;
  return out;
}

CurvatureFit asymptotic_curvature_fit(const CurveSpec& c, Complex b,
                                      const std::vector<double>& radii) {
  std::vector<double> kappas, deltas;
  for (double t : radii) {
    kappas.push_back(gaussian_curvature(c, t * b));
    deltas.push_back(1.0 - t);
  }
  const int max_m = std::max(2 * c.domain.rank(), 8);
  int best_m = 1;
  double best_score = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= max_m; ++m) {
    double score = 0.0;
    for (std::size_t i = 0; i < kappas.size(); ++i)
      score = std::max(score,
                       std::abs(kappas[i] + 2.0 / m) / (deltas[i] * deltas[i]));
    if (score < best_score) {
      best_score = score;
      best_m = m;
    }
  }
  CurvatureFit out;
  out.m = best_m;
  out.C = best_score;
  for (std::size_t i = 0; i < kappas.size(); ++i)
    out.ratios.push_back(std::abs(kappas[i] + 2.0 / best_m) /
                         (deltas[i] * deltas[i]));
  // A wrong order makes |kappa + 2/m| / delta^2 blow up as delta -> 0.
  const double first = out.ratios.front(), last = out.ratios.back();
  out.bounded = last <= 4.0 * std::max(first, 1e-9) + 1e-6;
  return out;
}

std::vector<std::pair<Complex, NormalForm>> tangent_rank_profile(
    const CurveSpec& c, const std::vector<Complex>& samples) {
  std::vector<std::pair<Complex, NormalForm>> out;
  for (Complex w : samples) {
    const VectorXcd z = curve_eval(c, w);
    check_in_domain(c, w, z);
    out.emplace_back(w, normal_form(c.domain, {z, curve_deriv(c, w)}));
  }
  return out;
}

CurveProfileRow curve_profile_at(const CurveSpec& c, Complex w) {
  CurveProfileRow row;
  row.w = w;
  row.delta = 1.0 - std::abs(w);
  row.lambda = pullback_coefficient(c, w);
  row.kappa = gaussian_curvature(c, w);
  row.sigma2 = second_fundamental_norm2(c, w);
  const VectorXcd z = curve_eval(c, w);
  row.nf = normal_form(c.domain, {z, curve_deriv(c, w)});
  row.rank = row.nf.rank;
  return row;
}

CurveCheck curve_check(const CurveSpec& c, int samples) {
  CurveCheck out;
  const double arg0 = std::arg(c.b0);
  for (int i = 0; i < samples; ++i) {
    // Interior fan below the declared arc.
    const double th = arg0 + c.valid_radius * (2.0 * i / samples - 1.0);
    const double t = 0.05 + 0.9 * double(i) / samples;
    const Complex w = t * std::polar(1.0, th);
    const VectorXcd z = curve_eval(c, w);
    if (!contains(c.domain, z, 0.0)) out.interior_ok = false;
    if (curve_deriv(c, w).norm() < 1e-12) out.immersed_ok = false;
    // Declared boundary arc.
    const Complex wb = std::polar(1.0, th);
    const double h = generic_norm(c.domain, curve_eval(c, wb));
    out.max_boundary_h = std::max(out.max_boundary_h, std::abs(h));
  }
  out.boundary_ok = out.max_boundary_h <= 1e-8;
  return out;
}

}  // namespace symdom
