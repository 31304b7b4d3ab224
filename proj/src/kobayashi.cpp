#include "symdom/kobayashi.hpp"

#include <Eigen/SVD>
#include <algorithm>

#include "symdom/automorphisms.hpp"
#include "symdom/metrics.hpp"

namespace symdom {

namespace {

double poincare_of(double s) {
  if (s >= 1.0) throw std::domain_error("kobayashi: point outside the domain");
  return std::log((1.0 + s) / (1.0 - s));
}

/// Polydisk values of one atom's point (singular values / canonical values).
std::vector<double> atom_point_values(const Atom& a, const VectorXcd& seg,
                                      bool& exact) {
  switch (a.kind) {
    case Kind::TypeI: {
      Eigen::JacobiSVD<MatrixXcd> svd(unpack(a, seg));
      const VectorXd s = svd.singularValues();
      return std::vector<double>(s.data(), s.data() + s.size());
    }
    case Kind::TypeII: {
      exact = false;
      Eigen::JacobiSVD<MatrixXcd> svd(unpack(a, seg));
      const VectorXd s = svd.singularValues();
      std::vector<double> vals;
      for (int j = 0; j + 1 < s.size(); j += 2) vals.push_back(0.5 * (s[j] + s[j + 1]));
      return vals;
    }
    case Kind::TypeIII: {
      exact = false;
      Eigen::JacobiSVD<MatrixXcd> svd(unpack(a, seg));
      const VectorXd s = svd.singularValues();
      return std::vector<double>(s.data(), s.data() + s.size());
    }
    case Kind::TypeIV: {
      exact = false;
      const auto [z1, z2] = type_iv_point_values(seg);
      return {z1, z2};
    }
    default:
      throw std::logic_error("atom_point_values: bad atom");
  }
}

bool boundary_distance_is_exact(const DomainSpec& d) {
  for (const auto& a : d.atoms())
    if (a.kind != Kind::TypeI) return false;
  return true;
}

}  // namespace

double disk_distance(Complex z1, Complex z2) {
  if (std::abs(z1) >= 1.0 || std::abs(z2) >= 1.0)
    throw std::domain_error("disk_distance: points must lie in the unit disk");
  const double t = std::abs((z2 - z1) / (1.0 - std::conj(z1) * z2));
  return poincare_of(t);
}

DomainDistance domain_distance_from_origin(const DomainSpec& d,
                                           const DomainPoint& z) {
  check_dim(d, z, "domain_distance_from_origin");
  if (!contains(d, z, 0.0))
    throw std::domain_error("domain_distance_from_origin: point outside the domain");
  bool exact = true;
  double val = 0.0;
  for (const auto& a : d.atoms())
    for (double s : atom_point_values(a, z.segment(a.offset, a.dim), exact))
      val = std::max(val, poincare_of(s));
  return {val, exact};
}

DomainDistance domain_distance(const DomainSpec& d, const DomainPoint& z1,
                               const DomainPoint& z2) {
  const Transvection T(d, z1);
  return domain_distance_from_origin(d, T.apply(z2));
}

BoundCheck boundary_bound_check(const DomainSpec& d, const DomainPoint& z) {
  if (!boundary_distance_is_exact(d))
    throw std::invalid_argument(
        "boundary_bound_check: supported for TypeI, polydisks and their products");
  const double lhs = domain_distance_from_origin(d, z).value;
  const double rhs = -std::log(boundary_distance(d, z));
  return {lhs, rhs, lhs >= rhs - 1e-12};
}

double calibrate_frame_constant(const DomainSpec& d) {
  const int N = d.dim();
  std::vector<VectorXcd> dirs;
  for (int i = 0; i < N; ++i) {
    VectorXcd e = VectorXcd::Zero(N);
    e[i] = 1.0;
    dirs.push_back(e);
  }
  dirs.push_back(VectorXcd::Ones(N));
  if (N >= 2) {
    VectorXcd m = VectorXcd::Zero(N);
    m[0] = 1.0;
    m[1] = Complex(0.0, 1.0);
    dirs.push_back(m);
  }
  EvalOptions opts;
  opts.allow_near_boundary = true;
  double peak = 0.0;
  for (const auto& dir : dirs) {
    const double cross = boundary_crossing_scale(d, dir);
    for (int ti = 0; ti <= 9; ++ti) {
      const DomainPoint z = (0.1 * ti * cross) * dir;
      const double delta = boundary_distance(d, z);
      const MatrixXcd g = ke_metric(d, z, opts).g;
      for (int j = 0; j < N; ++j)
        peak = std::max(peak, std::sqrt(g(j, j).real()) * delta);
    }
  }
  return 1.05 * peak;
}

FrameCheck frame_norm_bound_check(const DomainSpec& d, const DomainPoint& z,
                                  double C) {
  const double delta = boundary_distance(d, z);
  if (delta < 1e-4)
    throw std::domain_error("frame_norm_bound_check: boundary distance below 1e-4");
  EvalOptions opts;
  opts.allow_near_boundary = true;
  const MatrixXcd g = ke_metric(d, z, opts).g;
  double mx = 0.0;
  for (int j = 0; j < d.dim(); ++j) mx = std::max(mx, std::sqrt(g(j, j).real()));
  const double bound = C / delta;
  return {mx, bound, mx <= bound};
}

}  // namespace symdom
