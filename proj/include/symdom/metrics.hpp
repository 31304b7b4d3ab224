#pragma once

#include <functional>

#include "symdom/domains.hpp"

namespace symdom {

enum class MetricKind { KE, Bergman };

struct MetricSample {
  DomainPoint base;
  MatrixXcd g;  // Hermitian N x N in packed coordinates
  MetricKind which;
};

struct EvalOptions {
  bool allow_near_boundary = false;
  double fd_step_second = 1e-3;  // base step for 2nd-order stencils
  double fd_step_fourth = 3e-2;  // base step for 4th-order stencils
};

/// Kaehler-Einstein metric g_{i jbar}(z) = d^2(-log h)/dz_i dzbar_j,
/// normalized so minimal disks have Gaussian curvature -2. Closed form.
MetricSample ke_metric(const DomainSpec& d, const DomainPoint& z,
                       const EvalOptions& opts = {});

/// Same metric by central differences of -log h (cross-check path).
MetricSample ke_metric_fd(const DomainSpec& d, const DomainPoint& z,
                          const EvalOptions& opts = {});

/// Bergman metric: per-factor KE metric scaled by that factor's genus.
MetricSample bergman_metric(const DomainSpec& d, const DomainPoint& z,
                            const EvalOptions& opts = {});

struct CurvatureValue {
  Complex value;
  bool closed_form;
};

/// R_{alpha betabar gamma deltabar}(Omega, g_Omega) at the origin, by the
/// per-type closed forms.
Complex curvature_at_origin(const DomainSpec& d, const VectorXcd& alpha,
                            const VectorXcd& beta, const VectorXcd& gamma,
                            const VectorXcd& delta,
                            MetricKind which = MetricKind::KE);

/// Curvature at a general base point: transports all vectors to the origin
/// through the transvection differential and evaluates the closed form.
CurvatureValue curvature(const DomainSpec& d, const DomainPoint& base,
                         const VectorXcd& alpha, const VectorXcd& beta,
                         const VectorXcd& gamma, const VectorXcd& delta,
                         const EvalOptions& opts = {});

/// Independent finite-difference path: directional 4th-order stencils of
/// -log h plus the first-derivative correction term.
CurvatureValue curvature_fd(const DomainSpec& d, const DomainPoint& base,
                            const VectorXcd& alpha, const VectorXcd& beta,
                            const VectorXcd& gamma, const VectorXcd& delta,
                            const EvalOptions& opts = {});

/// Christoffel symbols Gamma^k_{ij} = g^{k lbar} d_i g_{j lbar}, one matrix
/// (i,j) per upper index k. All zero at the origin.
std::vector<MatrixXcd> christoffel(const DomainSpec& d, const DomainPoint& z,
                                   const EvalOptions& opts = {});

/// Random tangent vector of unit g_Omega-norm at the origin.
VectorXcd random_unit_tangent(const DomainSpec& d, Rng& rng);

namespace detail {
/// Mixed holomorphic/antiholomorphic directional derivative of a real
/// function f of a packed point, one derivative per direction; holo[i] says
/// whether slot i is d/dw (true) or d/dwbar (false). 4-point circular
/// stencils per slot, one Richardson step.
Complex mixed_derivative(const std::function<double(const VectorXcd&)>& f,
                         const VectorXcd& center,
                         const std::vector<VectorXcd>& dirs,
                         const std::vector<bool>& holo, double h);
}  // namespace detail

}  // namespace symdom
