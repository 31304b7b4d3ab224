#include "symdom/metrics.hpp"

#include <Eigen/LU>

#include "symdom/automorphisms.hpp"

namespace symdom {

namespace {

const Complex kI(0.0, 1.0);

void refuse_near_boundary(const DomainSpec& d, const DomainPoint& z,
                          const EvalOptions& opts, const char* what) {
  if (!contains(d, z, 0.0)) {
    throw std::domain_error(std::string(what) + ": point outside the domain");
  }
  if (!opts.allow_near_boundary &&
      boundary_distance(d, z) < kNearBoundaryLimit) {
    throw std::domain_error(std::string(what) +
                            ": point within 1e-3 of the boundary "
                            "(set allow_near_boundary to override)");
  }
}

/// Unpacked matrix views of the packed basis vectors of one atom.
std::vector<MatrixXcd> atom_basis_views(const Atom& a) {
  std::vector<MatrixXcd> views;
  views.reserve(a.dim);
  for (int c = 0; c < a.dim; ++c) {
    VectorXcd e = VectorXcd::Zero(a.dim);
    e[c] = 1.0;
    views.push_back(unpack(a, e));
  }
  return views;
}

/// KE metric block of one atom in its packed coordinates.
MatrixXcd atom_ke_metric(const Atom& a, const VectorXcd& seg) {
  MatrixXcd g(a.dim, a.dim);
  switch (a.kind) {
    case Kind::TypeI:
    case Kind::TypeII:
    case Kind::TypeIII: {
      const MatrixXcd Z = unpack(a, seg);
      const int rows = Z.rows(), cols = Z.cols();
      const MatrixXcd A =
          (MatrixXcd::Identity(rows, rows) - Z * Z.adjoint()).inverse();
      const MatrixXcd B =
          (MatrixXcd::Identity(cols, cols) - Z.adjoint() * Z).inverse();
      const double c = (a.kind == Kind::TypeII) ? 0.5 : 1.0;
      const auto basis = atom_basis_views(a);
      for (int i = 0; i < a.dim; ++i) {
        const MatrixXcd AVB = A * basis[i] * B;
        for (int j = 0; j < a.dim; ++j)
          g(i, j) = c * (AVB * basis[j].adjoint()).trace();
      }
      break;
    }
    case Kind::TypeIV: {
      // g_{i jbar} = -h_{i jbar}/h + h_i h_jbar / h^2 with
      // h = 1 - 2|z|^2 + |z^t z|^2.
      Complex zt = 0.0;
      for (int i = 0; i < a.dim; ++i) zt += seg[i] * seg[i];
      const double h = 1.0 - 2.0 * seg.squaredNorm() + std::norm(zt);
      VectorXcd hi(a.dim);
      for (int i = 0; i < a.dim; ++i)
        hi[i] = -2.0 * std::conj(seg[i]) + 2.0 * seg[i] * std::conj(zt);
      for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
          const Complex hij = (i == j ? Complex(-2.0, 0.0) : Complex(0.0, 0.0)) +
                              4.0 * seg[i] * std::conj(seg[j]);
          g(i, j) = -hij / h + hi[i] * std::conj(hi[j]) / (h * h);
        }
      break;
    }
    default:
      throw std::logic_error("atom_ke_metric: bad atom");
  }
  return g;
}

Complex atom_curvature0(const Atom& a, const VectorXcd& alpha,
                        const VectorXcd& beta, const VectorXcd& gamma,
                        const VectorXcd& delta) {
  switch (a.kind) {
    case Kind::TypeI:
    case Kind::TypeII:
    case Kind::TypeIII: {
      const MatrixXcd A = unpack(a, alpha);
      const MatrixXcd B = unpack(a, beta);
      const MatrixXcd C = unpack(a, gamma);
      const MatrixXcd D = unpack(a, delta);
      const Complex t = (A * B.adjoint() * C * D.adjoint()).trace() +
                        (C * B.adjoint() * A * D.adjoint()).trace();
      return (a.kind == Kind::TypeII) ? -0.5 * t : -t;
    }
    case Kind::TypeIV: {
      // From the quartic term of -log h: exact at the origin.
      const Complex pab = beta.dot(alpha);   // sum alpha_i conj(beta_i)
      const Complex pgd = delta.dot(gamma);
      const Complex pad = delta.dot(alpha);
      const Complex pgb = beta.dot(gamma);
      Complex ag = 0.0, bd = 0.0;
      for (int i = 0; i < a.dim; ++i) {
        ag += alpha[i] * gamma[i];
        bd += beta[i] * delta[i];
      }
      return -4.0 * pab * pgd - 4.0 * pad * pgb + 4.0 * ag * std::conj(bd);
    }
    default:
      throw std::logic_error("atom_curvature0: bad atom");
  }
}

}  // namespace

MetricSample ke_metric(const DomainSpec& d, const DomainPoint& z,
                       const EvalOptions& opts) {
  check_dim(d, z, "ke_metric");
  refuse_near_boundary(d, z, opts, "ke_metric");
  MatrixXcd g = MatrixXcd::Zero(d.dim(), d.dim());
  for (const auto& a : d.atoms())
    g.block(a.offset, a.offset, a.dim, a.dim) =
        atom_ke_metric(a, z.segment(a.offset, a.dim));
  return {z, g, MetricKind::KE};
}

MetricSample bergman_metric(const DomainSpec& d, const DomainPoint& z,
                            const EvalOptions& opts) {
  check_dim(d, z, "bergman_metric");
  refuse_near_boundary(d, z, opts, "bergman_metric");
  MatrixXcd g = MatrixXcd::Zero(d.dim(), d.dim());
  for (const auto& a : d.atoms())
    g.block(a.offset, a.offset, a.dim, a.dim) =
        double(a.genus) * atom_ke_metric(a, z.segment(a.offset, a.dim));
  return {z, g, MetricKind::Bergman};
}

namespace detail {

Complex mixed_derivative(const std::function<double(const VectorXcd&)>& f,
                         const VectorXcd& center,
                         const std::vector<VectorXcd>& dirs,
                         const std::vector<bool>& holo, double h) {
  const int m = static_cast<int>(dirs.size());
  auto estimate = [&](double step) {
    // Tensor product of 4-point circular stencils, one per slot.
    Complex sum = 0.0;
    const int total = 1 << (2 * m);  // 4^m
    for (int t = 0; t < total; ++t) {
      int rem = t;
      VectorXcd zp = center;
      Complex w = 1.0;
      for (int s = 0; s < m; ++s) {
        const int j = rem & 3;
        rem >>= 2;
        const Complex rot = std::pow(kI, j);
        zp += step * rot * dirs[s];
        w *= holo[s] ? std::pow(kI, -j) : std::pow(kI, j);
      }
      sum += w * f(zp);
    }
    double denom = std::pow(4.0 * step, m);
    return sum / denom;
  };
  // Two Richardson levels: kills the O(h^2) and O(h^4) terms.
  const Complex d1 = estimate(h);
  const Complex d2 = estimate(h / 2.0);
  const Complex d4 = estimate(h / 4.0);
  const Complex r1 = (4.0 * d2 - d1) / 3.0;
  const Complex r2 = (4.0 * d4 - d2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

}  // namespace detail

MetricSample ke_metric_fd(const DomainSpec& d, const DomainPoint& z,
                          const EvalOptions& opts) {
  check_dim(d, z, "ke_metric_fd");
  refuse_near_boundary(d, z, opts, "ke_metric_fd");
  const int N = d.dim();
  const double h = std::min(opts.fd_step_second, boundary_distance(d, z) / 20.0);
  auto phi = [&](const VectorXcd& w) { return -std::log(generic_norm(d, w)); };
  MatrixXcd g(N, N);
  for (int i = 0; i < N; ++i) {
    VectorXcd ei = VectorXcd::Zero(N);
    ei[i] = 1.0;
    for (int j = i; j < N; ++j) {
      VectorXcd ej = VectorXcd::Zero(N);
      ej[j] = 1.0;
      const Complex v =
          detail::mixed_derivative(phi, z, {ei, ej}, {true, false}, h);
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  }
  // Positive definiteness signals a sound step choice.
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(g);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::domain_error("ke_metric_fd: loss of positive definiteness");
  return {z, g, MetricKind::KE};
}

Complex curvature_at_origin(const DomainSpec& d, const VectorXcd& alpha,
                            const VectorXcd& beta, const VectorXcd& gamma,
                            const VectorXcd& delta, MetricKind which) {
  check_dim(d, alpha, "curvature");
  check_dim(d, beta, "curvature");
  check_dim(d, gamma, "curvature");
  check_dim(d, delta, "curvature");
  Complex r = 0.0;
  for (const auto& a : d.atoms()) {
    const Complex rf = atom_curvature0(a, alpha.segment(a.offset, a.dim),
                                       beta.segment(a.offset, a.dim),
                                       gamma.segment(a.offset, a.dim),
                                       delta.segment(a.offset, a.dim));
    r += (which == MetricKind::Bergman) ? double(a.genus) * rf : rf;
  }
  return r;
}

CurvatureValue curvature(const DomainSpec& d, const DomainPoint& base,
                         const VectorXcd& alpha, const VectorXcd& beta,
                         const VectorXcd& gamma, const VectorXcd& delta,
                         const EvalOptions& opts) {
  check_dim(d, base, "curvature");
  refuse_near_boundary(d, base, opts, "curvature");
  if (base.isZero(0.0))
    return {curvature_at_origin(d, alpha, beta, gamma, delta), true};
  const Transvection T(d, base);
  return {curvature_at_origin(d, T.differential(base, alpha),
                              T.differential(base, beta),
                              T.differential(base, gamma),
                              T.differential(base, delta)),
          true};
}

CurvatureValue curvature_fd(const DomainSpec& d, const DomainPoint& base,
                            const VectorXcd& alpha, const VectorXcd& beta,
                            const VectorXcd& gamma, const VectorXcd& delta,
                            const EvalOptions& opts) {
  check_dim(d, base, "curvature_fd");
  refuse_near_boundary(d, base, opts, "curvature_fd");
  const int N = d.dim();
  auto phi = [&](const VectorXcd& w) { return -std::log(generic_norm(d, w)); };

  const double delta_b = boundary_distance(d, base);
  const double h4 = std::min(opts.fd_step_fourth, delta_b / 10.0);
  const double h3 = std::min(1e-2, delta_b / 10.0);

  const Complex fourth = detail::mixed_derivative(
      phi, base, {alpha, beta, gamma, delta}, {true, false, true, false}, h4);

  // Correction term X^t G^{-1} conj(Y) with X_q = D_a D_c Dbar_{e_q} phi and
  // Y_p = D_b D_d Dbar_{e_p} phi; vanishes at the origin.
  VectorXcd X(N), Y(N);
  for (int t = 0; t < N; ++t) {
    VectorXcd et = VectorXcd::Zero(N);
    et[t] = 1.0;
    X[t] = detail::mixed_derivative(phi, base, {alpha, gamma, et},
                                    {true, true, false}, h3);
    Y[t] = detail::mixed_derivative(phi, base, {beta, delta, et},
                                    {true, true, false}, h3);
  }
  const MatrixXcd G = ke_metric_fd(d, base, opts).g;
  const VectorXcd GinvYc = G.inverse() * Y.conjugate();
  const Complex corr = (X.transpose() * GinvYc)(0, 0);
  return {-fourth + corr, false};
}

std::vector<MatrixXcd> christoffel(const DomainSpec& d, const DomainPoint& z,
                                   const EvalOptions& opts) {
  check_dim(d, z, "christoffel");
  refuse_near_boundary(d, z, opts, "christoffel");
  const int N = d.dim();
  const double h = std::min(1e-4, boundary_distance(d, z) / 50.0);
  const MatrixXcd G = ke_metric(d, z, opts).g;
  const MatrixXcd Ginv = G.inverse();

  // dG_i = d g / d z_i by 4th-order central differences of the closed form.
  auto metric_at = [&](const VectorXcd& w) { return ke_metric(d, w, opts).g; };
  std::vector<MatrixXcd> dG(N);
  for (int i = 0; i < N; ++i) {
    VectorXcd ei = VectorXcd::Zero(N);
    ei[i] = 1.0;
    auto diff = [&](Complex step) {
      return ((metric_at(z + step * ei) - metric_at(z - step * ei)) /
              (2.0 * step))
          .eval();
    };
    const MatrixXcd dx = (4.0 * diff(h / 2.0) - diff(h)) / 3.0;
    const MatrixXcd dy = (4.0 * diff(kI * h / 2.0) - diff(kI * h)) / 3.0;
    // d/dz = (diff along real step + diff along imaginary step) / 2
    dG[i] = 0.5 * (dx + dy);
  }
  // Gamma^k_{ij} = sum_l (G^{-1})_{lk} d_i G_{jl}
  std::vector<MatrixXcd> gamma(N, MatrixXcd::Zero(N, N));
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        Complex s = 0.0;
        for (int l = 0; l < N; ++l) s += Ginv(l, k) * dG[i](j, l);
        gamma[k](i, j) = s;
      }
  return gamma;
}

VectorXcd random_unit_tangent(const DomainSpec& d, Rng& rng) {
  VectorXcd v = rng.gaussian_vector(d.dim());
  return v / std::sqrt(ke_norm0_sq(d, v));
}

}  // namespace symdom
