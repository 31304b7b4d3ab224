#include <doctest.h>

#include "symdom/automorphisms.hpp"
#include "symdom/metrics.hpp"

using namespace symdom;

namespace {

DomainPoint pt(std::initializer_list<Complex> vals) {
  DomainPoint z(static_cast<int>(vals.size()));
  int i = 0;
  for (Complex v : vals) z[i++] = v;
  return z;
}

VectorXcd unit_at(int n, int i, Complex v = 1.0) {
  VectorXcd e = VectorXcd::Zero(n);
  e[i] = v;
  return e;
}

const std::vector<DomainSpec> kClassical = {
    DomainSpec::type_i(2, 2), DomainSpec::type_i(2, 3), DomainSpec::type_ii(4),
    DomainSpec::type_iii(2), DomainSpec::type_iv(3)};

}  // namespace

TEST_CASE("KE metric frozen examples") {
  const DomainSpec disk = DomainSpec::disk();
  CHECK(ke_metric(disk, pt({0.0})).g(0, 0).real() == doctest::Approx(1.0));
  // exact Poincare coefficient (1-|z|^2)^(-2) = 1/0.5625 at z = 0.5,
  // frozen from the finite-difference oracle
  CHECK(ke_metric(disk, pt({0.5})).g(0, 0).real() ==
        doctest::Approx(1.0 / 0.5625));
  CHECK(ke_metric_fd(disk, pt({0.5})).g(0, 0).real() ==
        doctest::Approx(1.0 / 0.5625).epsilon(1e-9));
  const DomainSpec i22 = DomainSpec::type_i(2, 2);
  const MatrixXcd g0 = ke_metric(i22, VectorXcd::Zero(4)).g;
  CHECK((g0 - MatrixXcd::Identity(4, 4)).norm() < 1e-14);
}

TEST_CASE("Bergman metric is the genus-weighted KE metric") {
  CHECK(bergman_metric(DomainSpec::disk(), pt({0.0})).g(0, 0).real() ==
        doctest::Approx(2.0));
  const MatrixXcd gp =
      bergman_metric(DomainSpec::polydisk(2), pt({0.0, 0.0})).g;
  CHECK((gp - 2.0 * MatrixXcd::Identity(2, 2)).norm() < 1e-14);
  const MatrixXcd gi =
      bergman_metric(DomainSpec::type_i(2, 2), VectorXcd::Zero(4)).g;
  CHECK((gi - 4.0 * MatrixXcd::Identity(4, 4)).norm() < 1e-14);
}

TEST_CASE("closed-form metric agrees with central differences") {
  Rng rng(31);
  for (const DomainSpec& d : kClassical) {
    for (int trial = 0; trial < 4; ++trial) {
      const DomainPoint z = sample_interior(d, rng, 0.7);
      const MatrixXcd a = ke_metric(d, z).g;
      const MatrixXcd b = ke_metric_fd(d, z).g;
      CHECK((a - b).norm() / a.norm() < 1e-7);
      // positive definite at interior points
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(a);
      CHECK(es.eigenvalues().minCoeff() > 0.0);
    }
  }
}

TEST_CASE("metric/curvature refuse near-boundary points without override") {
  const DomainSpec disk = DomainSpec::disk();
  const DomainPoint z = pt({1.0 - 5e-4});
  CHECK_THROWS_AS(ke_metric(disk, z), std::domain_error);
  EvalOptions opts;
  opts.allow_near_boundary = true;
  CHECK_NOTHROW(ke_metric(disk, z, opts));
}

TEST_CASE("curvature frozen examples on I(2,2)") {
  const DomainSpec d = DomainSpec::type_i(2, 2);
  const VectorXcd e11 = unit_at(4, 0);  // E_11 packed row-major
  const VectorXcd e12 = unit_at(4, 1);
  VectorXcd eta(4);
  eta << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  CHECK(curvature_at_origin(d, e11, e11, e11, e11).real() == doctest::Approx(-2.0));
  CHECK(curvature_at_origin(d, eta, eta, eta, eta).real() == doctest::Approx(-1.0));
  // alpha = beta = E11, gamma = delta = E12: the root-pattern value -1
  CHECK(curvature_at_origin(d, e11, e11, e12, e12).real() == doctest::Approx(-1.0));
}

TEST_CASE("curvature symmetries on random quadruples") {
  Rng rng(41);
  for (const DomainSpec& d : kClassical) {
    for (int trial = 0; trial < 200; ++trial) {
      const VectorXcd a = random_unit_tangent(d, rng);
      const VectorXcd b = random_unit_tangent(d, rng);
      const VectorXcd c = random_unit_tangent(d, rng);
      const VectorXcd e = random_unit_tangent(d, rng);
      const Complex r = curvature_at_origin(d, a, b, c, e);
      // pair symmetry and Hermitian symmetry
      CHECK(std::abs(r - curvature_at_origin(d, c, b, a, e)) < 1e-8);
      CHECK(std::abs(r - curvature_at_origin(d, a, e, c, b)) < 1e-8);
      CHECK(std::abs(r - std::conj(curvature_at_origin(d, b, a, e, c))) < 1e-8);
    }
  }
}

TEST_CASE("bisectional-curvature sign: R_{a abar a abar} <= 0") {
  Rng rng(43);
  for (const DomainSpec& d : kClassical) {
    for (int trial = 0; trial < 1000; ++trial) {
      const VectorXcd a = random_unit_tangent(d, rng);
      CHECK(curvature_at_origin(d, a, a, a, a).real() <= 1e-12);
    }
  }
}

TEST_CASE("closed-form vs finite-difference curvature at the origin") {
  Rng rng(47);
  for (const DomainSpec& d : kClassical) {
    const DomainPoint origin = VectorXcd::Zero(d.dim());
    for (int trial = 0; trial < 25; ++trial) {
      const VectorXcd a = random_unit_tangent(d, rng);
      const VectorXcd b = random_unit_tangent(d, rng);
      const VectorXcd c = random_unit_tangent(d, rng);
      const VectorXcd e = random_unit_tangent(d, rng);
      const Complex closed = curvature_at_origin(d, a, b, c, e);
      const Complex fd = curvature_fd(d, origin, a, b, c, e).value;
      CHECK(std::abs(closed - fd) < 1e-5 * std::max(1.0, std::abs(closed)));
    }
  }
}

TEST_CASE("finite-difference curvature at a general base agrees with transport") {
  Rng rng(53);
  for (const DomainSpec& d :
       {DomainSpec::type_i(2, 2), DomainSpec::type_iii(2), DomainSpec::type_iv(3)}) {
    for (int trial = 0; trial < 3; ++trial) {
      const DomainPoint z = sample_interior(d, rng, 0.4);
      const VectorXcd a = random_unit_tangent(d, rng);
      const VectorXcd b = random_unit_tangent(d, rng);
      const Complex closed = curvature(d, z, a, b, a, b).value;
      const Complex fd = curvature_fd(d, z, a, b, a, b).value;
      CHECK(std::abs(closed - fd) < 2e-4 * std::max(1.0, std::abs(closed)));
    }
  }
}

TEST_CASE("holomorphic sectional curvature is -2 on characteristic vectors") {
  // TypeI/III rank-one matrices, TypeII single canonical block, TypeIV
  // isotropic vectors; all normalized to unit g-norm.
  const DomainSpec i23 = DomainSpec::type_i(2, 3);
  VectorXcd v = VectorXcd::Zero(6);
  v[1] = 1.0;  // E_12
  CHECK(curvature_at_origin(i23, v, v, v, v).real() == doctest::Approx(-2.0));

  const DomainSpec ii4 = DomainSpec::type_ii(4);
  VectorXcd w = VectorXcd::Zero(6);
  w[0] = 1.0;  // J_1 block in the (1,2) plane
  CHECK(curvature_at_origin(ii4, w, w, w, w).real() == doctest::Approx(-2.0));

  const DomainSpec iv3 = DomainSpec::type_iv(3);
  VectorXcd u(3);
  u << 0.5, Complex(0.0, 0.5), 0.0;  // isotropic, g-unit
  CHECK(curvature_at_origin(iv3, u, u, u, u).real() == doctest::Approx(-2.0));
}

TEST_CASE("transvection transport leaves curvature invariant") {
  Rng rng(59);
  for (const DomainSpec& d : kClassical) {
    for (int trial = 0; trial < 5; ++trial) {
      const DomainPoint z = sample_interior(d, rng, 0.6);
      const VectorXcd a = random_unit_tangent(d, rng);
      const VectorXcd b = random_unit_tangent(d, rng);
      const Transvection T(d, z);
      const Complex via_transport =
          curvature_at_origin(d, T.differential(z, a), T.differential(z, b),
                              T.differential(z, a), T.differential(z, b));
      const Complex direct = curvature(d, z, a, b, a, b).value;
      CHECK(std::abs(via_transport - direct) < 1e-6);
    }
  }
}

TEST_CASE("christoffel symbols") {
  const DomainSpec disk = DomainSpec::disk();
  const auto at0 = christoffel(disk, pt({0.0}));
  CHECK(std::abs(at0[0](0, 0)) < 1e-10);
  // 2 zbar / (1 - |z|^2) = 4/3 at z = 0.5
  const auto at05 = christoffel(disk, pt({0.5}));
  CHECK(at05[0](0, 0).real() == doctest::Approx(4.0 / 3.0).epsilon(1e-8));

  const DomainSpec i22 = DomainSpec::type_i(2, 2);
  const auto g0 = christoffel(i22, VectorXcd::Zero(4));
  double mx = 0.0;
  for (const auto& m : g0) mx = std::max(mx, m.norm());
  CHECK(mx < 1e-10);
}

TEST_CASE("product curvature splits across factors") {
  Rng rng(61);
  const DomainSpec d =
      DomainSpec::product({DomainSpec::type_i(2, 2), DomainSpec::type_iv(3)});
  for (int trial = 0; trial < 10; ++trial) {
    const VectorXcd a = random_unit_tangent(d, rng);
    VectorXcd a1 = a, a2 = a;
    a1.tail(3).setZero();
    a2.head(4).setZero();
    const Complex whole = curvature_at_origin(d, a, a, a, a);
    const Complex f1 = curvature_at_origin(d, a1, a1, a1, a1);
    const Complex f2 = curvature_at_origin(d, a2, a2, a2, a2);
    CHECK(std::abs(whole - f1 - f2) < 1e-10);
  }
}
