#pragma once

#include "symdom/domains.hpp"

namespace symdom {

/// Kobayashi (= Poincare) distance on the disk, d(0,zeta) = log((1+|zeta|)/(1-|zeta|)).
double disk_distance(Complex z1, Complex z2);

struct DomainDistance {
  double value;
  bool exact;  // false: polydisk lower bound through the point normal form
};

/// Kobayashi distance from the origin: max over polydisk coordinates /
/// singular values of log((1+s)/(1-s)). Exact for TypeI and polydisks;
/// a certified lower bound for TypeII/III/IV.
DomainDistance domain_distance_from_origin(const DomainSpec& d, const DomainPoint& z);

/// Two-point extension d(z1, z2) := d(0, Phi_{z1}(z2)).
DomainDistance domain_distance(const DomainSpec& d, const DomainPoint& z1,
                               const DomainPoint& z2);

struct BoundCheck {
  double lhs;  // d_Omega(0, z)
  double rhs;  // -log delta(z, boundary)
  bool ok;     // lhs >= rhs - 1e-12
};

/// The boundary-distance inequality d(0,z) >= -log delta(z); supported for
/// the kinds whose boundary distance is exact (TypeI, polydisks, products).
BoundCheck boundary_bound_check(const DomainSpec& d, const DomainPoint& z);

struct FrameCheck {
  double max_frame_norm;  // max_j |d/dz_j|_g(z)
  double bound;           // C / delta(z)
  bool ok;
};

/// Calibrates C as 1.05x the empirical max of frame_norm * delta over a
/// coarse origin-centered grid.
double calibrate_frame_constant(const DomainSpec& d);

FrameCheck frame_norm_bound_check(const DomainSpec& d, const DomainPoint& z,
                                  double C);

}  // namespace symdom
