#include "symdom/automorphisms.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <functional>

#include "symdom/metrics.hpp"

namespace symdom {

namespace {

const Complex kI(0.0, 1.0);

MatrixXcd hermitian_power(const MatrixXcd& m, double expo) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
  VectorXd ev = es.eigenvalues();
  VectorXd pw(ev.size());
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] <= 0.0)
      throw std::domain_error("hermitian_power: matrix not positive definite");
    pw[i] = std::pow(ev[i], expo);
  }
  return es.eigenvectors() * pw.asDiagonal() *
         es.eigenvectors().adjoint();
}

/// Map (z1, z2, z3) in the Lie ball of dimension 3 to a symmetric 2x2
/// matrix with the same generic norm: W = [[z1+iz2, iz3], [iz3, z1-iz2]].
MatrixXcd bridge_to_sym(Complex z1, Complex z2, Complex z3) {
  MatrixXcd w(2, 2);
  w(0, 0) = z1 + kI * z2;
  w(1, 1) = z1 - kI * z2;
  w(0, 1) = kI * z3;
  w(1, 0) = kI * z3;
  return w;
}

struct LieTriple {
  Complex z1, z2, z3;
};

LieTriple bridge_from_sym(const MatrixXcd& w) {
  return {0.5 * (w(0, 0) + w(1, 1)), (w(0, 0) - w(1, 1)) / (2.0 * kI),
          w(0, 1) / kI};
}

/// Fourth-order directional derivative of a holomorphic map, with one
/// Richardson step.
VectorXcd holo_directional(const std::function<VectorXcd(const VectorXcd&)>& f,
                           const VectorXcd& z, const VectorXcd& v, double h) {
  auto five_point = [&](double s) {
    return ((-f(z + 2.0 * s * v) + 8.0 * f(z + s * v) - 8.0 * f(z - s * v) +
             f(z - 2.0 * s * v)) /
            (12.0 * s))
        .eval();
  };
  return (16.0 * five_point(h / 2.0) - five_point(h)) / 15.0;
}

}  // namespace

DiskMobius::DiskMobius(Complex w0) : w0_(w0) {
  if (std::abs(w0) >= 1.0)
    throw std::domain_error("disk_mobius: |w0| must be < 1");
}

Complex DiskMobius::operator()(Complex zeta) const {
  return (zeta + w0_) / (1.0 + std::conj(w0_) * zeta);
}

Complex DiskMobius::derivative(Complex zeta) const {
  const Complex den = 1.0 + std::conj(w0_) * zeta;
  return (1.0 - std::norm(w0_)) / (den * den);
}

Transvection::Transvection(const DomainSpec& d, const DomainPoint& z0)
    : d_(d), z0_(z0) {
  check_dim(d, z0, "transvection");
  if (!contains(d, z0, 0.0))
    throw std::domain_error("transvection: center outside the domain");
  mat_.resize(d.atoms().size());
  lie_.resize(d.atoms().size());
  for (std::size_t ai = 0; ai < d.atoms().size(); ++ai) {
    const Atom& a = d.atoms()[ai];
    const VectorXcd seg = z0.segment(a.offset, a.dim);
    if (a.kind != Kind::TypeIV) {
      MatrixData md;
      md.Z0 = unpack(a, seg);
      md.Z0adj = md.Z0.adjoint();
      const int rows = md.Z0.rows(), cols = md.Z0.cols();
      md.L = hermitian_power(
          MatrixXcd::Identity(rows, rows) - md.Z0 * md.Z0adj, -0.5);
      md.R = hermitian_power(
          MatrixXcd::Identity(cols, cols) - md.Z0adj * md.Z0, 0.5);
      mat_[ai] = std::move(md);
      continue;
    }
    LieBallData ld;
    const int n = a.n;
    if (seg.norm() < 1e-300) {
      ld.identity = true;
      lie_[ai] = std::move(ld);
      continue;
    }
    // Phase: make z0^t z0 real and nonnegative.
    Complex q0 = 0.0;
    for (int i = 0; i < n; ++i) q0 += seg[i] * seg[i];
    ld.phase = (std::abs(q0) > 1e-300)
                   ? std::sqrt(std::conj(q0) / std::abs(q0))
                   : Complex(1.0, 0.0);
    const VectorXcd zp = ld.phase * seg;
    const Eigen::VectorXd x = zp.real();
    Eigen::VectorXd y = zp.imag();
    // After phase alignment a >= b and a >= |z0|/sqrt(2) > 0.
    ld.a = x.norm();
    const Eigen::VectorXd xhat = x / ld.a;
    y -= xhat.dot(y) * xhat;
    ld.b = y.norm();
    // Rows of rot: xhat, yhat, completed to an orthonormal basis.
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, n);
    int filled = 0;
    basis.col(filled++) = xhat;
    if (ld.b > 1e-300) basis.col(filled++) = y / ld.b;
    for (int c = 0; c < n && filled < n; ++c) {
      Eigen::VectorXd cand = Eigen::VectorXd::Unit(n, c);
      for (int j = 0; j < filled; ++j)
        cand -= basis.col(j).dot(cand) * basis.col(j);
      if (cand.norm() > 1e-8) basis.col(filled++) = cand / cand.norm();
    }
    Eigen::MatrixXd rot = basis.transpose();
    if (rot.determinant() < 0) rot.row(n - 1) *= -1.0;  // stay in SO(n)
    ld.rot = rot;
    // 2x2 symmetric-domain transvection at W0 = diag(a-b, a+b).
    ld.W0 = MatrixXcd::Zero(2, 2);
    ld.W0(0, 0) = ld.a - ld.b;
    ld.W0(1, 1) = ld.a + ld.b;
    const MatrixXcd i2 = MatrixXcd::Identity(2, 2);
    ld.L3 = hermitian_power(i2 - ld.W0 * ld.W0.adjoint(), -0.5);
    ld.R3 = hermitian_power(i2 - ld.W0.adjoint() * ld.W0, 0.5);
    lie_[ai] = std::move(ld);
  }
}

VectorXcd Transvection::apply_atom(std::size_t ai, const VectorXcd& seg) const {
  const Atom& a = d_.atoms()[ai];
  if (a.kind != Kind::TypeIV) {
    const MatrixData& md = mat_[ai];
    const MatrixXcd Z = unpack(a, seg);
    const int cols = Z.cols();
    const MatrixXcd G =
        (MatrixXcd::Identity(cols, cols) - md.Z0adj * Z).inverse();
    return pack(a, md.L * (Z - md.Z0) * G * md.R);
  }
  const LieBallData& ld = lie_[ai];
  if (ld.identity) return seg;
  const int n = a.n;
  const VectorXcd y = ld.rot * (ld.phase * seg).eval();
  Complex q = 0.0;
  for (int i = 2; i < n; ++i) q += y[i] * y[i];

  auto transport = [&](Complex z1, Complex z2, Complex z3) {
    const MatrixXcd W = bridge_to_sym(z1, z2, z3);
    const MatrixXcd G =
        (MatrixXcd::Identity(2, 2) - ld.W0.adjoint() * W).inverse();
    return bridge_from_sym((ld.L3 * (W - ld.W0) * G * ld.R3).eval());
  };

  VectorXcd out(n);
  if (std::abs(q) > 1e-200) {
    const Complex w = std::sqrt(q);
    const LieTriple t = transport(y[0], y[1], w);
    out[0] = t.z1;
    out[1] = t.z2;
    const Complex scale = t.z3 / w;
    for (int i = 2; i < n; ++i) out[i] = scale * y[i];
  } else {
    const LieTriple t = transport(y[0], y[1], 0.0);
    out[0] = t.z1;
    out[1] = t.z2;
    // Tail scale = d(out_3)/d(w) at w = 0; the third output is odd in w.
    const double eps = 1e-3;
    const Complex s1 = transport(y[0], y[1], eps).z3 / eps;
    const Complex s2 = transport(y[0], y[1], eps / 2.0).z3 / (eps / 2.0);
    const Complex scale = (4.0 * s2 - s1) / 3.0;
    for (int i = 2; i < n; ++i) out[i] = scale * y[i];
  }
  return std::conj(ld.phase) * (ld.rot.transpose() * out).eval();
}

VectorXcd Transvection::diff_atom(std::size_t ai, const VectorXcd& seg,
                                  const VectorXcd& vseg) const {
  const Atom& a = d_.atoms()[ai];
  if (a.kind != Kind::TypeIV) {
    const MatrixData& md = mat_[ai];
    const MatrixXcd Z = unpack(a, seg);
    const MatrixXcd V = unpack(a, vseg);
    const int cols = Z.cols();
    const MatrixXcd G =
        (MatrixXcd::Identity(cols, cols) - md.Z0adj * Z).inverse();
    const MatrixXcd dPhi =
        md.L * (V + (Z - md.Z0) * G * md.Z0adj * V) * G * md.R;
    return pack(a, dPhi);
  }
  const LieBallData& ld = lie_[ai];
  if (ld.identity) return vseg;
  // Directional differences; the sub-map is holomorphic and smooth across
  // the square-root branch by parity.
  DomainSpec sub = DomainSpec::type_iv(a.n);
  const double dist = boundary_distance(sub, seg);
  const double vn = vseg.norm();
  const double h = std::min(1e-2, dist / 8.0) / std::max(vn, 1e-12);
  auto f = [&](const VectorXcd& z) { return apply_atom(ai, z); };
  return holo_directional(f, seg, vseg, h);
}

DomainPoint Transvection::apply(const DomainPoint& z) const {
  check_dim(d_, z, "transvection apply");
  DomainPoint out(z.size());
  for (std::size_t ai = 0; ai < d_.atoms().size(); ++ai) {
    const Atom& a = d_.atoms()[ai];
    out.segment(a.offset, a.dim) = apply_atom(ai, z.segment(a.offset, a.dim));
  }
  return out;
}

VectorXcd Transvection::differential(const DomainPoint& z,
                                     const VectorXcd& v) const {
  check_dim(d_, z, "transvection differential");
  check_dim(d_, v, "transvection differential");
  VectorXcd out(z.size());
  for (std::size_t ai = 0; ai < d_.atoms().size(); ++ai) {
    const Atom& a = d_.atoms()[ai];
    out.segment(a.offset, a.dim) =
        diff_atom(ai, z.segment(a.offset, a.dim), v.segment(a.offset, a.dim));
  }
  return out;
}

double pullback_isometry_defect(const DomainSpec& d, const Transvection& T,
                                const DomainPoint& z) {
  const int N = d.dim();
  EvalOptions opts;
  opts.allow_near_boundary = true;
  const MatrixXcd g_here = ke_metric(d, z, opts).g;
  const DomainPoint Tz = T.apply(z);
  const MatrixXcd g_there = ke_metric(d, Tz, opts).g;
  MatrixXcd J(N, N);
  for (int j = 0; j < N; ++j) {
    VectorXcd ej = VectorXcd::Zero(N);
    ej[j] = 1.0;
    J.col(j) = T.differential(z, ej);
  }
  return (J.adjoint() * g_there * J - g_here).norm();
}

}  // namespace symdom
