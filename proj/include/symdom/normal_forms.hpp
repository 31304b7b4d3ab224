#pragma once

#include "symdom/metrics.hpp"

namespace symdom {

/// Invariants eta_1 >= ... >= eta_r >= 0 of a tangent vector under the
/// isotropy action; rank = number of values above tolerance. A g_Omega-unit
/// vector has sum eta_j^2 = 1.
struct NormalForm {
  std::vector<double> values;
  int rank = 0;
};

/// The Hermitian form H_eta(alpha, beta) = R_{eta etabar alpha betabar}
/// expressed against a g_Omega-orthonormal coordinate basis.
struct HEtaForm {
  TangentVector eta;
  MatrixXcd matrix;        // N x N Hermitian, in the orthonormal frame
  VectorXd eigenvalues;    // ascending (Eigen convention)
  MatrixXcd eigenvectors;  // columns, orthonormal frame coefficients
};

struct Subspace {
  MatrixXcd basis;  // N x d, orthonormal columns, packed coordinates
  int dim = 0;
  bool ambiguous = false;  // spectral gap straddles the tolerance
};

NormalForm normal_form(const DomainSpec& d, const TangentVector& v,
                       double tol = kRankTol);

/// Rank with an explicit threshold; rank(d) results are "generic".
int vector_rank(const DomainSpec& d, const TangentVector& v,
                double tol = kRankTol);

/// Assembles and diagonalizes H_eta; eta is normalized to g_Omega-unit
/// length internally (zero vectors give the zero form).
HEtaForm h_eta(const DomainSpec& d, const TangentVector& eta);

/// Null space N_eta of H_eta: eigenvectors with |eigenvalue| < tol.
Subspace null_space(const DomainSpec& d, const TangentVector& eta, double tol = kRankTol);

/// W = { v : R_{v zetabar alpha betabar} = 0 for all zeta in N_eta and all
/// alpha, beta }, the joint annihilator computed from the stacked linear
/// system over a coordinate basis. Contains C*eta.
Subspace w_space(const DomainSpec& d, const TangentVector& eta, double tol = kRankTol);

/// V = [[T(Z), m^-], T(Z)] realized through the matrix models:
/// span{eta B eta} over B in the dual symmetry class (TypeI/II/III), or the
/// curvature contraction span_j (R_{eta e_jbar eta e_ibar})_i for TypeIV.
Subspace v_space(const DomainSpec& d, const TangentVector& eta);

/// The type of the characteristic subdomain housing W for rank-k vectors:
/// I(p,q)->I(k,k), II(n)->II(2k), III(n)->III(k), IV: k=1 -> disk,
/// k=2 -> IV(n); Polydisk(r)->Polydisk(k).
DomainSpec characteristic_subdomain(const DomainSpec& d, int k);

/// Largest principal angle between two subspaces of equal dimension.
double subspace_angle(const Subspace& A, const Subspace& B);

/// True iff every column of A lies in span(B) up to tol.
bool subspace_contained(const Subspace& A, const Subspace& B, double tol = 1e-8);

/// The packed-coordinate block predicted for W of a rank-k normal-form
/// vector (upper-left k x k block and its II/III/IV analogues).
Subspace predicted_w_block(const DomainSpec& d, int k);

}  // namespace symdom
