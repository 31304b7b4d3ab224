#pragma once

#include <string>

#include "symdom/common.hpp"

namespace symdom {

// Classical bounded symmetric domains in their Harish-Chandra realizations.
//
//   TypeI(p,q)  : p-by-q complex matrices Z with ||Z||_op < 1
//   TypeII(n)   : antisymmetric n-by-n matrices, ||Z||_op < 1
//   TypeIII(n)  : symmetric n-by-n matrices, ||Z||_op < 1
//   TypeIV(n)   : Lie ball, 1 - 2|z|^2 + |z^t z|^2 > 0 and |z|^2 < 1
//   Polydisk(r) : product of r unit disks
//   Product     : finite product of the above

enum class Kind { TypeI, TypeII, TypeIII, TypeIV, Polydisk, Product };

class DomainSpec;

/// One irreducible piece of a (possibly product) domain, with its offset
/// into the packed coordinate vector. Polydisks flatten to disk atoms.
struct Atom {
  Kind kind;     // TypeI/TypeII/TypeIII/TypeIV only
  int p = 0;     // TypeI rows
  int q = 0;     // TypeI cols
  int n = 0;     // TypeII/III matrix size, TypeIV ambient dimension
  int offset = 0;
  int dim = 0;
  int rank = 0;
  int genus = 0;  // p(Omega)+2 for this factor
  bool tube = false;
};

class DomainSpec {
 public:
  static DomainSpec type_i(int p, int q);
  static DomainSpec type_ii(int n);
  static DomainSpec type_iii(int n);
  static DomainSpec type_iv(int n);
  static DomainSpec polydisk(int r);
  static DomainSpec product(std::vector<DomainSpec> factors);
  static DomainSpec disk() { return type_i(1, 1); }

  Kind kind() const { return kind_; }
  int p() const { return p_; }
  int q() const { return q_; }
  int n() const { return n_; }
  int r() const { return r_; }
  const std::vector<DomainSpec>& factors() const { return factors_; }

  int dim() const;
  int rank() const;
  /// Genus p(Omega)+2 of each irreducible factor, in atom order.
  std::vector<int> genus_per_factor() const;
  bool is_tube() const;
  bool is_irreducible() const { return kind_ != Kind::Polydisk && kind_ != Kind::Product; }

  /// Flattened irreducible factors with packed-coordinate offsets.
  const std::vector<Atom>& atoms() const { return atoms_; }

  bool operator==(const DomainSpec& o) const;
  std::string describe() const;

 private:
  DomainSpec() = default;
  void build_atoms();

  Kind kind_ = Kind::TypeI;
  int p_ = 1, q_ = 1;  // TypeI
  int n_ = 0;          // TypeII/III/IV
  int r_ = 0;          // Polydisk
  std::vector<DomainSpec> factors_;
  std::vector<Atom> atoms_;
};

/// Packed coordinates of a point (length = dim of the domain).
using DomainPoint = VectorXcd;

struct TangentVector {
  DomainPoint base;
  VectorXcd dir;
};

/// Matrix view of one atom's packed segment. TypeIV atoms return an n-by-1
/// column. Packing is a linear bijection; unpack(pack(M)) = M exactly.
MatrixXcd unpack(const Atom& a, const VectorXcd& coords);
VectorXcd pack(const Atom& a, const MatrixXcd& m);
MatrixXcd unpack_at(const Atom& a, const DomainPoint& z);

/// Metric weight of each packed coordinate at the origin: the KE metric at 0
/// is diag(weights) in packed coordinates.
VectorXd metric_weights(const DomainSpec& d);

/// |v|^2 under the KE metric at the origin.
double ke_norm0_sq(const DomainSpec& d, const VectorXcd& v);

/// Generic norm h(z,z): h(0,0) = 1, h > 0 inside, h = 0 on the boundary.
double generic_norm(const DomainSpec& d, const DomainPoint& z);

/// Polarized generic norm h(z,xi) (holomorphic in z, antiholomorphic in xi);
/// h(z,z) = generic_norm(d,z).
Complex generic_norm_polarized(const DomainSpec& d, const DomainPoint& z,
                               const DomainPoint& xi);

/// Generic norms of each irreducible factor at z, in atom order.
std::vector<double> factor_generic_norms(const DomainSpec& d,
                                         const DomainPoint& z);

/// True iff every defining inequality is satisfied by at least `margin`.
bool contains(const DomainSpec& d, const DomainPoint& z, double margin);

struct KernelValue {
  double value;
  double volume_constant;
};

/// Euclidean volume of the unit disk (the only wired volume constant).
inline constexpr double kDiskVolume = kPi;

/// Bergman kernel K(z,z) = h(z,z)^(-genus) per factor / volume constant.
KernelValue bergman_kernel(const DomainSpec& d, const DomainPoint& z,
                           double volume_constant = 1.0);

/// Euclidean distance from z to the boundary. Exact for TypeI/Polydisk and
/// the matrix-view distance 1 - s_max for TypeII/III; closed form for TypeIV
/// through the polydisk reduction.
double boundary_distance(const DomainSpec& d, const DomainPoint& z);

/// Largest t such that t*dir stays inside the domain (boundary crossing
/// scale along a ray from the origin).
double boundary_crossing_scale(const DomainSpec& d, const VectorXcd& dir);

/// Canonical polydisk values (zeta_1 >= zeta_2 >= 0) of a TypeIV point:
/// zeta_{1,2} = a +- b with a = |x'|, b = |y'| after phase alignment.
std::pair<double, double> type_iv_point_values(const VectorXcd& z);

/// Deterministic interior sample: t * crossing_scale * dir with t in
/// (0, max_t). Useful for property sweeps.
DomainPoint sample_interior(const DomainSpec& d, Rng& rng, double max_t = 0.95);

void check_dim(const DomainSpec& d, const VectorXcd& z, const char* what);

}  // namespace symdom
