#include "symdom/domains.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <limits>
#include <sstream>

namespace symdom {

namespace {

Atom make_atom(Kind k, int p, int q, int n) {
  Atom a;
  a.kind = k;
  a.p = p;
  a.q = q;
  a.n = n;
  switch (k) {
    case Kind::TypeI:
      a.dim = p * q;
      a.rank = p;
      a.genus = p + q;
      a.tube = (p == q);
      break;
    case Kind::TypeII:
      a.dim = n * (n - 1) / 2;
      a.rank = n / 2;
      a.genus = 2 * (n - 1);
      a.tube = (n % 2 == 0);
      break;
    case Kind::TypeIII:
      a.dim = n * (n + 1) / 2;
      a.rank = n;
      a.genus = n + 1;
      a.tube = true;
      break;
    case Kind::TypeIV:
      a.dim = n;
      a.rank = 2;
      a.genus = n;
      a.tube = true;
      break;
    default:
      throw std::logic_error("make_atom: not an irreducible kind");
  }
  return a;
}

double smax(const MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

double atom_generic_norm(const Atom& a, const VectorXcd& seg) {
  switch (a.kind) {
    case Kind::TypeI:
    case Kind::TypeIII: {
      const MatrixXcd Z = unpack(a, seg);
      return (MatrixXcd::Identity(Z.rows(), Z.rows()) - Z * Z.adjoint())
          .determinant()
          .real();
    }
    case Kind::TypeII: {
      const MatrixXcd Z = unpack(a, seg);
      const double det =
          (MatrixXcd::Identity(a.n, a.n) - Z * Z.adjoint()).determinant().real();
      return std::sqrt(std::max(det, 0.0));
    }
    case Kind::TypeIV: {
      Complex zt = 0.0;
      for (int i = 0; i < seg.size(); ++i) zt += seg[i] * seg[i];
      return 1.0 - 2.0 * seg.squaredNorm() + std::norm(zt);
    }
    default:
      throw std::logic_error("atom_generic_norm: bad atom");
  }
}

}  // namespace

DomainSpec DomainSpec::type_i(int p, int q) {
  if (p < 1 || q < p) throw std::invalid_argument("TypeI requires 1 <= p <= q");
  DomainSpec d;
  d.kind_ = Kind::TypeI;
  d.p_ = p;
  d.q_ = q;
  d.build_atoms();
  return d;
}

DomainSpec DomainSpec::type_ii(int n) {
  if (n < 2) throw std::invalid_argument("TypeII requires n >= 2");
  DomainSpec d;
  d.kind_ = Kind::TypeII;
  d.n_ = n;
  d.build_atoms();
  return d;
}

DomainSpec DomainSpec::type_iii(int n) {
  if (n < 1) throw std::invalid_argument("TypeIII requires n >= 1");
  DomainSpec d;
  d.kind_ = Kind::TypeIII;
  d.n_ = n;
  d.build_atoms();
  return d;
}

DomainSpec DomainSpec::type_iv(int n) {
  if (n < 3) throw std::invalid_argument("TypeIV requires n >= 3");
  DomainSpec d;
  d.kind_ = Kind::TypeIV;
  d.n_ = n;
  d.build_atoms();
  return d;
}

DomainSpec DomainSpec::polydisk(int r) {
  if (r < 1) throw std::invalid_argument("Polydisk requires r >= 1");
  DomainSpec d;
  d.kind_ = Kind::Polydisk;
  d.r_ = r;
  d.build_atoms();
  return d;
}

DomainSpec DomainSpec::product(std::vector<DomainSpec> factors) {
  if (factors.empty()) throw std::invalid_argument("Product requires at least one factor");
  DomainSpec d;
  d.kind_ = Kind::Product;
  d.factors_ = std::move(factors);
  d.build_atoms();
  return d;
}

void DomainSpec::build_atoms() {
  atoms_.clear();
  int offset = 0;
  auto push = [&](Atom a) {
    a.offset = offset;
    offset += a.dim;
    atoms_.push_back(a);
  };
  switch (kind_) {
    case Kind::TypeI:
      push(make_atom(Kind::TypeI, p_, q_, 0));
      break;
    case Kind::TypeII:
      push(make_atom(Kind::TypeII, 0, 0, n_));
      break;
    case Kind::TypeIII:
      push(make_atom(Kind::TypeIII, 0, 0, n_));
      break;
    case Kind::TypeIV:
      push(make_atom(Kind::TypeIV, 0, 0, n_));
      break;
    case Kind::Polydisk:
      for (int j = 0; j < r_; ++j) push(make_atom(Kind::TypeI, 1, 1, 0));
      break;
    case Kind::Product:
      for (const auto& f : factors_)
        for (Atom a : f.atoms()) push(a);
      break;
  }
}

int DomainSpec::dim() const {
  int s = 0;
  for (const auto& a : atoms_) s += a.dim;
  return s;
}

int DomainSpec::rank() const {
  int s = 0;
  for (const auto& a : atoms_) s += a.rank;
  return s;
}

std::vector<int> DomainSpec::genus_per_factor() const {
  std::vector<int> g;
  for (const auto& a : atoms_) g.push_back(a.genus);
  return g;
}

bool DomainSpec::is_tube() const {
  for (const auto& a : atoms_)
    if (!a.tube) return false;
  return true;
}

bool DomainSpec::operator==(const DomainSpec& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::TypeI: return p_ == o.p_ && q_ == o.q_;
    case Kind::TypeII:
    case Kind::TypeIII:
    case Kind::TypeIV: return n_ == o.n_;
    case Kind::Polydisk: return r_ == o.r_;
    case Kind::Product: return factors_ == o.factors_;
  }
  return false;
}

std::string DomainSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::TypeI: os << "I(" << p_ << "," << q_ << ")"; break;
    case Kind::TypeII: os << "II(" << n_ << ")"; break;
    case Kind::TypeIII: os << "III(" << n_ << ")"; break;
    case Kind::TypeIV: os << "IV(" << n_ << ")"; break;
    case Kind::Polydisk: os << "Delta^" << r_; break;
    case Kind::Product: {
      os << "(";
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << " x ";
        os << factors_[i].describe();
      }
      os << ")";
      break;
    }
  }
  return os.str();
}

void check_dim(const DomainSpec& d, const VectorXcd& z, const char* what) {
  if (z.size() != d.dim()) {
    std::ostringstream os;
    os << what << ": expected length " << d.dim() << " for " << d.describe()
       << ", got " << z.size();
    throw std::invalid_argument(os.str());
  }
}

MatrixXcd unpack(const Atom& a, const VectorXcd& coords) {
  if (coords.size() != a.dim) throw std::invalid_argument("unpack: segment size mismatch");
  switch (a.kind) {
    case Kind::TypeI: {
      MatrixXcd m(a.p, a.q);
      for (int i = 0; i < a.p; ++i)
        for (int j = 0; j < a.q; ++j) m(i, j) = coords[i * a.q + j];
      return m;
    }
    case Kind::TypeII: {
      MatrixXcd m = MatrixXcd::Zero(a.n, a.n);
      int k = 0;
      for (int i = 0; i < a.n; ++i)
        for (int j = i + 1; j < a.n; ++j, ++k) {
          m(i, j) = coords[k];
          m(j, i) = -coords[k];
        }
      return m;
    }
    case Kind::TypeIII: {
      MatrixXcd m(a.n, a.n);
      int k = 0;
      for (int i = 0; i < a.n; ++i)
        for (int j = i; j < a.n; ++j, ++k) {
          m(i, j) = coords[k];
          m(j, i) = coords[k];
        }
      return m;
    }
    case Kind::TypeIV:
      return coords;
    default:
      throw std::logic_error("unpack: bad atom");
  }
}

VectorXcd pack(const Atom& a, const MatrixXcd& m) {
  VectorXcd coords(a.dim);
  switch (a.kind) {
    case Kind::TypeI:
      for (int i = 0; i < a.p; ++i)
        for (int j = 0; j < a.q; ++j) coords[i * a.q + j] = m(i, j);
      return coords;
    case Kind::TypeII: {
      int k = 0;
      for (int i = 0; i < a.n; ++i)
        for (int j = i + 1; j < a.n; ++j, ++k) coords[k] = m(i, j);
      return coords;
    }
    case Kind::TypeIII: {
      int k = 0;
      for (int i = 0; i < a.n; ++i)
        for (int j = i; j < a.n; ++j, ++k) coords[k] = m(i, j);
      return coords;
    }
    case Kind::TypeIV:
      return m.col(0);
    default:
      throw std::logic_error("pack: bad atom");
  }
}

MatrixXcd unpack_at(const Atom& a, const DomainPoint& z) {
  return unpack(a, z.segment(a.offset, a.dim));
}

VectorXd metric_weights(const DomainSpec& d) {
  VectorXd w(d.dim());
  for (const auto& a : d.atoms()) {
    switch (a.kind) {
      case Kind::TypeI:
      case Kind::TypeII:
        w.segment(a.offset, a.dim).setOnes();
        break;
      case Kind::TypeIII: {
        int k = 0;
        for (int i = 0; i < a.n; ++i)
          for (int j = i; j < a.n; ++j, ++k) w[a.offset + k] = (i == j) ? 1.0 : 2.0;
        break;
      }
      case Kind::TypeIV:
        w.segment(a.offset, a.dim).setConstant(2.0);
        break;
      default:
        throw std::logic_error("metric_weights: bad atom");
    }
  }
  return w;
}

double ke_norm0_sq(const DomainSpec& d, const VectorXcd& v) {
  check_dim(d, v, "ke_norm0_sq");
  const VectorXd w = metric_weights(d);
  double s = 0.0;
  for (int i = 0; i < v.size(); ++i) s += w[i] * std::norm(v[i]);
  return s;
}

Complex generic_norm_polarized(const DomainSpec& d, const DomainPoint& z,
                               const DomainPoint& xi) {
  check_dim(d, z, "generic_norm");
  check_dim(d, xi, "generic_norm");
  Complex h = 1.0;
  for (const auto& a : d.atoms()) {
    switch (a.kind) {
      case Kind::TypeI:
      case Kind::TypeIII: {
        const MatrixXcd Z = unpack_at(a, z);
        const MatrixXcd Xi = unpack_at(a, xi);
        const MatrixXcd M = MatrixXcd::Identity(Z.rows(), Z.rows()) - Z * Xi.adjoint();
        h *= M.determinant();
        break;
      }
      case Kind::TypeII: {
        const MatrixXcd Z = unpack_at(a, z);
        const MatrixXcd Xi = unpack_at(a, xi);
        const MatrixXcd M = MatrixXcd::Identity(a.n, a.n) - Z * Xi.adjoint();
        // det is a perfect square on the antisymmetric class; principal root
        // is continuous on the diagonal xi = z where det > 0.
        h *= std::sqrt(M.determinant());
        break;
      }
      case Kind::TypeIV: {
        const VectorXcd zz = z.segment(a.offset, a.dim);
        const VectorXcd xx = xi.segment(a.offset, a.dim);
        Complex dot = 0.0, zt = 0.0, xt = 0.0;
        for (int i = 0; i < a.dim; ++i) {
          dot += zz[i] * std::conj(xx[i]);
          zt += zz[i] * zz[i];
          xt += xx[i] * xx[i];
        }
        h *= 1.0 - 2.0 * dot + zt * std::conj(xt);
        break;
      }
      default:
        throw std::logic_error("generic_norm: bad atom");
    }
  }
  return h;
}

double generic_norm(const DomainSpec& d, const DomainPoint& z) {
  check_dim(d, z, "generic_norm");
  double h = 1.0;
  for (const auto& a : d.atoms()) h *= atom_generic_norm(a, z.segment(a.offset, a.dim));
  return h;
}

std::vector<double> factor_generic_norms(const DomainSpec& d,
                                         const DomainPoint& z) {
  check_dim(d, z, "factor_generic_norms");
  std::vector<double> hs;
  for (const auto& a : d.atoms())
    hs.push_back(atom_generic_norm(a, z.segment(a.offset, a.dim)));
  return hs;
}

std::pair<double, double> type_iv_point_values(const VectorXcd& z) {
  // zeta_{1,2} = a +- b; a^2 + b^2 = |z|^2, a^2 - b^2 = |z^t z|.
  Complex zt = 0.0;
  for (int i = 0; i < z.size(); ++i) zt += z[i] * z[i];
  const double s = z.squaredNorm();
  const double p = std::abs(zt);
  const double a = std::sqrt(std::max(0.5 * (s + p), 0.0));
  const double b = std::sqrt(std::max(0.5 * (s - p), 0.0));
  return {a + b, a - b};
}

bool contains(const DomainSpec& d, const DomainPoint& z, double margin) {
  check_dim(d, z, "contains");
  if (margin < 0) throw std::invalid_argument("contains: margin must be >= 0");
  for (const auto& a : d.atoms()) {
    switch (a.kind) {
      case Kind::TypeI:
      case Kind::TypeII:
      case Kind::TypeIII: {
        if (smax(unpack_at(a, z)) >= 1.0 - margin) return false;
        break;
      }
      case Kind::TypeIV: {
        const VectorXcd zz = z.segment(a.offset, a.dim);
        Complex zt = 0.0;
        for (int i = 0; i < a.dim; ++i) zt += zz[i] * zz[i];
        const double h = 1.0 - 2.0 * zz.squaredNorm() + std::norm(zt);
        if (!(zz.squaredNorm() < 1.0 - margin && h > margin)) return false;
        break;
      }
      default:
        throw std::logic_error("contains: bad atom");
    }
  }
  return true;
}

KernelValue bergman_kernel(const DomainSpec& d, const DomainPoint& z,
                           double volume_constant) {
  if (!contains(d, z, 0.0))
    throw std::domain_error("bergman_kernel: point on or outside the boundary");
  double k = 1.0 / volume_constant;
  for (const auto& a : d.atoms())
    k *= std::pow(atom_generic_norm(a, z.segment(a.offset, a.dim)), -a.genus);
  return {k, volume_constant};
}

double boundary_distance(const DomainSpec& d, const DomainPoint& z) {
  if (!contains(d, z, 0.0))
    throw std::domain_error("boundary_distance: point outside the domain");
  double dist = std::numeric_limits<double>::infinity();
  for (const auto& a : d.atoms()) {
    double fd;
    switch (a.kind) {
      case Kind::TypeI:
      case Kind::TypeII:
      case Kind::TypeIII:
        fd = 1.0 - smax(unpack_at(a, z));
        break;
      case Kind::TypeIV: {
        const auto [z1, z2] = type_iv_point_values(z.segment(a.offset, a.dim));
        (void)z2;
        fd = (1.0 - z1) / std::sqrt(2.0);
        break;
      }
      default:
        throw std::logic_error("boundary_distance: bad atom");
    }
    dist = std::min(dist, fd);
  }
  return dist;
}

double boundary_crossing_scale(const DomainSpec& d, const VectorXcd& dir) {
  check_dim(d, dir, "boundary_crossing_scale");
  double scale = std::numeric_limits<double>::infinity();
  for (const auto& a : d.atoms()) {
    double s;
    switch (a.kind) {
      case Kind::TypeI:
      case Kind::TypeII:
      case Kind::TypeIII:
        s = smax(unpack_at(a, dir));
        break;
      case Kind::TypeIV: {
        const auto [z1, z2] = type_iv_point_values(dir.segment(a.offset, a.dim));
        (void)z2;
        s = z1;
        break;
      }
      default:
        throw std::logic_error("boundary_crossing_scale: bad atom");
    }
    if (s > 0) scale = std::min(scale, 1.0 / s);
  }
  return scale;
}

DomainPoint sample_interior(const DomainSpec& d, Rng& rng, double max_t) {
  const VectorXcd dir = rng.gaussian_vector(d.dim());
  const double c = boundary_crossing_scale(d, dir);
  const double t = rng.uniform(0.0, max_t);
  return (t * c) * dir;
}

}  // namespace symdom
