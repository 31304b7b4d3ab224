#pragma once

#include "symdom/domains.hpp"

namespace symdom {

/// phi(zeta) = (zeta + w0) / (1 + conj(w0) zeta), phi(0) = w0.
class DiskMobius {
 public:
  explicit DiskMobius(Complex w0);
  Complex operator()(Complex zeta) const;
  Complex derivative(Complex zeta) const;
  Complex w0() const { return w0_; }

 private:
  Complex w0_;
};

/// The symmetric-space transvection Phi with Phi(z0) = 0.
///
/// Matrix types use Phi(Z) = (I - Z0 Z0*)^(-1/2) (Z - Z0) (I - Z0* Z)^(-1)
/// (I - Z0* Z0)^(1/2), which preserves the symmetric and antisymmetric
/// classes. TypeIV reduces through the canonical 2-plane: a K-rotation takes
/// z0 to (a, ib, 0, ...), the rank-2 part maps through the linear bridge to
/// a symmetric 2x2 domain where the matrix transvection applies, and the
/// Peirce tail scales by the ratio of reduced third coordinates.
class Transvection {
 public:
  Transvection(const DomainSpec& d, const DomainPoint& z0);

  DomainPoint apply(const DomainPoint& z) const;
  DomainPoint operator()(const DomainPoint& z) const { return apply(z); }

  /// Differential dPhi(z)[v]. Closed form for matrix types and polydisks;
  /// high-order directional differences for TypeIV.
  VectorXcd differential(const DomainPoint& z, const VectorXcd& v) const;

  const DomainSpec& domain() const { return d_; }
  const DomainPoint& center() const { return z0_; }

 private:
  struct MatrixData {  // TypeI/II/III
    MatrixXcd Z0, Z0adj, L, R;  // L = (I-Z0 Z0*)^(-1/2), R = (I-Z0* Z0)^(1/2)
  };
  struct LieBallData {  // TypeIV
    bool identity = false;
    Complex phase = 1.0;     // e^{i phi}
    Eigen::MatrixXd rot;     // real special orthogonal, rot*(phase*z0) canonical
    double a = 0.0, b = 0.0; // canonical point (a, ib, 0, ...)
    MatrixXcd L3, R3, W0;    // cached 2x2 transvection at W0 = diag(a-b, a+b)
  };

  VectorXcd apply_atom(std::size_t ai, const VectorXcd& seg) const;
  VectorXcd diff_atom(std::size_t ai, const VectorXcd& seg,
                      const VectorXcd& vseg) const;

  DomainSpec d_;
  DomainPoint z0_;
  std::vector<MatrixData> mat_;       // parallel to atoms (unused slots empty)
  std::vector<LieBallData> lie_;
};

/// Frobenius norm of (dT)* g(T(z)) (dT) - g(z) in packed coordinates;
/// zero for exact isometries.
double pullback_isometry_defect(const DomainSpec& d, const Transvection& T,
                                const DomainPoint& z);

}  // namespace symdom
