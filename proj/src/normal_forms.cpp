#include "symdom/normal_forms.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>

#include "symdom/automorphisms.hpp"

namespace symdom {

namespace {

/// Transport a tangent vector to the origin through the transvection
/// differential (a linear isometry of tangent spaces).
VectorXcd tangent_at_origin(const DomainSpec& d, const TangentVector& v) {
  check_dim(d, v.base, "tangent");
  check_dim(d, v.dir, "tangent");
  if (v.base.isZero(0.0)) return v.dir;
  if (!contains(d, v.base, 0.0))
    throw std::domain_error("tangent transport: base point outside the domain");
  const Transvection T(d, v.base);
  return T.differential(v.base, v.dir);
}

std::vector<double> atom_normal_values(const Atom& a, const VectorXcd& seg) {
  switch (a.kind) {
    case Kind::TypeI:
    case Kind::TypeIII: {
      // Singular values (Takagi values for the symmetric class).
      Eigen::JacobiSVD<MatrixXcd> svd(unpack(a, seg));
      const VectorXd s = svd.singularValues();
      return std::vector<double>(s.data(), s.data() + s.size());
    }
    case Kind::TypeII: {
      // Singular values of an antisymmetric matrix pair up; list each once.
      Eigen::JacobiSVD<MatrixXcd> svd(unpack(a, seg));
      const VectorXd s = svd.singularValues();
      std::vector<double> vals;
      for (int j = 0; j + 1 < s.size(); j += 2)
        vals.push_back(0.5 * (s[j] + s[j + 1]));
      return vals;
    }
    case Kind::TypeIV: {
      Complex zt = 0.0;
      for (int i = 0; i < seg.size(); ++i) zt += seg[i] * seg[i];
      const double S = 2.0 * seg.squaredNorm();  // g_Omega-norm squared
      const double P = std::abs(zt);
      const double u = std::sqrt(std::max(S + 2.0 * P, 0.0));
      const double w = std::sqrt(std::max(S - 2.0 * P, 0.0));
      return {0.5 * (u + w), 0.5 * (u - w)};
    }
    default:
      throw std::logic_error("atom_normal_values: bad atom");
  }
}

/// Orthonormal column span of the given columns with a relative threshold.
Subspace orthonormal_span(const MatrixXcd& cols, double rel_tol = 1e-10) {
  Subspace s;
  if (cols.cols() == 0) {
    s.basis = MatrixXcd::Zero(cols.rows(), 0);
    return s;
  }
  Eigen::JacobiSVD<MatrixXcd> svd(cols, Eigen::ComputeThinU);
  const VectorXd sv = svd.singularValues();
  const double cut = rel_tol * std::max(sv.size() ? sv[0] : 0.0, 1e-300);
  int r = 0;
  while (r < sv.size() && sv[r] > cut) ++r;
  s.basis = svd.matrixU().leftCols(r);
  s.dim = r;
  return s;
}

}  // namespace

NormalForm normal_form(const DomainSpec& d, const TangentVector& v, double tol) {
  const VectorXcd dir0 = tangent_at_origin(d, v);
  std::vector<double> vals;
  for (const auto& a : d.atoms()) {
    auto av = atom_normal_values(a, dir0.segment(a.offset, a.dim));
    vals.insert(vals.end(), av.begin(), av.end());
  }
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  NormalForm nf;
  nf.values = std::move(vals);
  nf.rank = 0;
  for (double x : nf.values)
    if (x > tol) ++nf.rank;
  return nf;
}

int vector_rank(const DomainSpec& d, const TangentVector& v, double tol) {
  return normal_form(d, v, tol).rank;
}

HEtaForm h_eta(const DomainSpec& d, const TangentVector& eta) {
  VectorXcd e0 = tangent_at_origin(d, eta);
  const double nrm = std::sqrt(ke_norm0_sq(d, e0));
  const int N = d.dim();
  HEtaForm out;
  out.eta = eta;
  if (nrm < 1e-300) {
    out.matrix = MatrixXcd::Zero(N, N);
    out.eigenvalues = VectorXd::Zero(N);
    out.eigenvectors = MatrixXcd::Identity(N, N);
    return out;
  }
  e0 /= nrm;
  // Orthonormal coordinate frame: packed basis scaled by 1/sqrt(weight).
  const VectorXd w = metric_weights(d);
  std::vector<VectorXcd> frame(N);
  for (int a = 0; a < N; ++a) {
    frame[a] = VectorXcd::Zero(N);
    frame[a][a] = 1.0 / std::sqrt(w[a]);
  }
  MatrixXcd H(N, N);
  for (int a = 0; a < N; ++a) {
    H(a, a) = curvature_at_origin(d, e0, e0, frame[a], frame[a]);
    for (int b = a + 1; b < N; ++b) {
      const Complex v = curvature_at_origin(d, e0, e0, frame[a], frame[b]);
      H(a, b) = v;
      H(b, a) = std::conj(v);
    }
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);
  out.matrix = H;
  out.eigenvalues = es.eigenvalues();
  out.eigenvectors = es.eigenvectors();
  return out;
}

namespace {

/// Frame coefficients -> packed coordinates (diagonal rescale).
MatrixXcd frame_to_packed(const DomainSpec& d, const MatrixXcd& cols) {
  const VectorXd w = metric_weights(d);
  MatrixXcd out = cols;
  for (int i = 0; i < out.rows(); ++i) out.row(i) /= std::sqrt(w[i]);
  return out;
}

}  // namespace

Subspace null_space(const DomainSpec& d, const TangentVector& eta, double tol) {
  const HEtaForm f = h_eta(d, eta);
  if (std::sqrt(ke_norm0_sq(d, tangent_at_origin(d, eta))) < 1e-300)
    throw std::invalid_argument("null_space: eta must be nonzero");
  const int N = d.dim();
  std::vector<int> keep;
  bool ambiguous = false;
  for (int i = 0; i < N; ++i) {
    const double av = std::abs(f.eigenvalues[i]);
    if (av < tol) keep.push_back(i);
    if (av >= tol / 10.0 && av <= 10.0 * tol) ambiguous = true;
  }
  MatrixXcd cols(N, static_cast<int>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    cols.col(j) = f.eigenvectors.col(keep[j]);
  Subspace s = orthonormal_span(frame_to_packed(d, cols));
  s.ambiguous = ambiguous;
  return s;
}

Subspace w_space(const DomainSpec& d, const TangentVector& eta, double tol) {
  const Subspace nsp = null_space(d, eta, tol);
  const int N = d.dim();
  if (nsp.dim == 0) {
    // Nondegenerate H_eta: W is the full tangent space.
    Subspace s;
    s.basis = MatrixXcd::Identity(N, N);
    s.dim = N;
    return s;
  }
  // Stack R_{v zetabar alpha betabar} = 0 over a packed basis (alpha, beta)
  // and a basis of N_eta; v runs over packed coordinates.
  std::vector<VectorXcd> basis(N);
  for (int i = 0; i < N; ++i) {
    basis[i] = VectorXcd::Zero(N);
    basis[i][i] = 1.0;
  }
  const int rows = nsp.dim * N * N;
  MatrixXcd M(rows, N);
  int r = 0;
  for (int z = 0; z < nsp.dim; ++z) {
    const VectorXcd zeta = nsp.basis.col(z);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b, ++r)
        for (int c = 0; c < N; ++c)
          M(r, c) = curvature_at_origin(d, basis[c], zeta, basis[a], basis[b]);
  }
  Eigen::JacobiSVD<MatrixXcd> svd(M, Eigen::ComputeThinV);
  const VectorXd sv = svd.singularValues();
  const double scale = sv.size() ? std::max(sv[0], 1.0) : 1.0;
  const double cut = std::max(tol, 1e-9) * scale;
  bool ambiguous = false;
  int kdim = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv[i] <= cut) ++kdim;
    if (sv[i] >= cut / 10.0 && sv[i] <= 10.0 * cut) ambiguous = true;
  }
  Subspace s;
  s.basis = svd.matrixV().rightCols(kdim);
  s.dim = kdim;
  s.ambiguous = ambiguous;
  return s;
}

Subspace v_space(const DomainSpec& d, const TangentVector& eta) {
  if (d.atoms().size() != 1)
    throw std::invalid_argument("v_space: requires an irreducible classical domain");
  const Atom& a = d.atoms()[0];
  const VectorXcd e0 = tangent_at_origin(d, eta);
  if (e0.norm() < 1e-300)
    throw std::invalid_argument("v_space: eta must be nonzero");
  const int N = d.dim();
  switch (a.kind) {
    case Kind::TypeI:
    case Kind::TypeII:
    case Kind::TypeIII: {
      const MatrixXcd em = unpack(a, e0);
      std::vector<VectorXcd> cols;
      const int bn = (a.kind == Kind::TypeI) ? a.q : a.n;
      const int bm = (a.kind == Kind::TypeI) ? a.p : a.n;
      for (int i = 0; i < bn; ++i)
        for (int j = 0; j < bm; ++j) {
          MatrixXcd B = MatrixXcd::Zero(bn, bm);
          B(i, j) = 1.0;
          if (a.kind == Kind::TypeII) {
            if (i == j) continue;
            B(j, i) = -1.0;  // antisymmetric class
          } else if (a.kind == Kind::TypeIII) {
            if (j < i) continue;
            B(j, i) = 1.0;  // symmetric class
          }
          cols.push_back(pack(a, em * B * em));
        }
      MatrixXcd m(N, static_cast<int>(cols.size()));
      for (std::size_t j = 0; j < cols.size(); ++j) m.col(j) = cols[j];
      return orthonormal_span(m, 1e-9);
    }
    case Kind::TypeIV: {
      // Curvature contraction rho(P(eta (x) eta) (x) T*).
      MatrixXcd m(N, N);
      std::vector<VectorXcd> basis(N);
      for (int i = 0; i < N; ++i) {
        basis[i] = VectorXcd::Zero(N);
        basis[i][i] = 1.0;
      }
      for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i)
          m(i, j) = curvature_at_origin(d, e0, basis[j], e0, basis[i]);
      return orthonormal_span(m, 1e-9);
    }
    default:
      throw std::logic_error("v_space: bad atom");
  }
}

DomainSpec characteristic_subdomain(const DomainSpec& d, int k) {
  if (k < 1 || k > d.rank())
    throw std::invalid_argument("characteristic_subdomain: k out of range");
  switch (d.kind()) {
    case Kind::TypeI:
      return DomainSpec::type_i(k, k);
    case Kind::TypeII:
      return DomainSpec::type_ii(2 * k);
    case Kind::TypeIII:
      return DomainSpec::type_iii(k);
    case Kind::TypeIV:
      return (k == 1) ? DomainSpec::disk() : DomainSpec::type_iv(d.n());
    case Kind::Polydisk:
      return DomainSpec::polydisk(k);
    case Kind::Product:
      throw std::invalid_argument(
          "characteristic_subdomain: product domains need a per-factor rank "
          "split; apply factor-wise");
  }
  throw std::logic_error("characteristic_subdomain: unreachable");
}

double subspace_angle(const Subspace& A, const Subspace& B) {
  if (A.dim != B.dim) return kPi / 2.0;
  if (A.dim == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXcd> svd(A.basis.adjoint() * B.basis);
  const double smin =
      std::clamp(svd.singularValues().minCoeff(), 0.0, 1.0);
  return std::acos(smin);
}

bool subspace_contained(const Subspace& A, const Subspace& B, double tol) {
  if (A.dim == 0) return true;
  const MatrixXcd resid = A.basis - B.basis * (B.basis.adjoint() * A.basis);
  return resid.colwise().norm().maxCoeff() <= tol;
}

Subspace predicted_w_block(const DomainSpec& d, int k) {
  if (d.atoms().size() != 1 && d.kind() != Kind::Polydisk)
    throw std::invalid_argument("predicted_w_block: irreducible or polydisk only");
  const int N = d.dim();
  std::vector<int> idx;
  switch (d.kind()) {
    case Kind::TypeI: {
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) idx.push_back(i * d.q() + j);
      break;
    }
    case Kind::TypeII: {
      int c = 0;
      for (int i = 0; i < d.n(); ++i)
        for (int j = i + 1; j < d.n(); ++j, ++c)
          if (i < 2 * k && j < 2 * k) idx.push_back(c);
      break;
    }
    case Kind::TypeIII: {
      int c = 0;
      for (int i = 0; i < d.n(); ++i)
        for (int j = i; j < d.n(); ++j, ++c)
          if (i < k && j < k) idx.push_back(c);
      break;
    }
    case Kind::TypeIV: {
      if (k != 2)
        throw std::invalid_argument(
            "predicted_w_block: TypeIV block is only coordinate-aligned for k = 2");
      for (int i = 0; i < N; ++i) idx.push_back(i);
      break;
    }
    case Kind::Polydisk: {
      for (int i = 0; i < k; ++i) idx.push_back(i);
      break;
    }
    default:
      throw std::invalid_argument("predicted_w_block: unsupported kind");
  }
  Subspace s;
  s.basis = MatrixXcd::Zero(N, static_cast<int>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) s.basis(idx[j], j) = 1.0;
  s.dim = static_cast<int>(idx.size());
  return s;
}

}  // namespace symdom
