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

const std::vector<DomainSpec> kAllKinds = {
    DomainSpec::type_i(2, 2),  DomainSpec::type_i(2, 3), DomainSpec::type_ii(4),
    DomainSpec::type_ii(5),    DomainSpec::type_iii(2),  DomainSpec::type_iii(3),
    DomainSpec::type_iv(3),    DomainSpec::type_iv(4),   DomainSpec::polydisk(2),
    DomainSpec::product({DomainSpec::type_i(1, 2), DomainSpec::type_iv(3)})};

}  // namespace

TEST_CASE("disk Mobius maps") {
  const DiskMobius id(0.0);
  CHECK(id(Complex(0.3, 0.1)) == Complex(0.3, 0.1));

  const DiskMobius phi(0.5);
  CHECK(phi(0.0).real() == doctest::Approx(0.5));
  CHECK(phi(0.0).imag() == doctest::Approx(0.0));
  CHECK(phi(0.5).real() == doctest::Approx(0.8));  // (0.5+0.5)/(1+0.25)
  CHECK(phi.derivative(0.0).real() == doctest::Approx(0.75));  // 1 - |w0|^2

  CHECK_THROWS_AS(DiskMobius(Complex(1.0, 0.0)), std::domain_error);
}

TEST_CASE("disk Mobius group action up to rotation") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex w1 = 0.9 * rng.uniform() * std::polar(1.0, 2 * kPi * rng.uniform());
    const Complex w2 = 0.9 * rng.uniform() * std::polar(1.0, 2 * kPi * rng.uniform());
    const DiskMobius p1(w1), p2(w2);
    const Complex dest = p2(w1);
    const DiskMobius p3(dest);
    // composed map sends 0 to phi2(w1)
    CHECK(std::abs(p2(p1(0.0)) - dest) < 1e-14);
    // derivative ratio has unit modulus
    const Complex ratio = p2.derivative(w1) * p1.derivative(0.0) / p3.derivative(0.0);
    CHECK(std::abs(std::abs(ratio) - 1.0) < 1e-12);
  }
}

TEST_CASE("transvections send their center to the origin exactly") {
  Rng rng(13);
  for (const DomainSpec& d : kAllKinds) {
    for (int trial = 0; trial < 10; ++trial) {
      const DomainPoint z0 = sample_interior(d, rng, 0.9);
      const Transvection T(d, z0);
      CHECK(T.apply(z0).norm() < 1e-12);
    }
  }
}

TEST_CASE("transvection on the disk is the familiar Mobius map") {
  const DomainSpec disk = DomainSpec::disk();
  const Transvection T(disk, pt({0.5}));
  CHECK(std::abs(T.apply(pt({0.5}))[0]) < 1e-15);
  // (z - 0.5)/(1 - 0.5 z) at z = 0.2
  CHECK(T.apply(pt({0.2}))[0].real() == doctest::Approx((0.2 - 0.5) / (1 - 0.1)));
}

TEST_CASE("transvections preserve the domain and the symmetry class") {
  Rng rng(19);
  for (const DomainSpec& d : kAllKinds) {
    const DomainPoint z0 = sample_interior(d, rng, 0.8);
    const Transvection T(d, z0);
    for (int trial = 0; trial < 20; ++trial) {
      const DomainPoint z = sample_interior(d, rng, 0.95);
      const DomainPoint w = T.apply(z);
      CHECK(contains(d, w, 0.0));
      for (const auto& a : d.atoms()) {
        const MatrixXcd m = unpack_at(a, w);
        if (a.kind == Kind::TypeII) CHECK((m + m.transpose()).norm() < 1e-12);
        if (a.kind == Kind::TypeIII) CHECK((m - m.transpose()).norm() < 1e-12);
      }
    }
  }
}

TEST_CASE("TypeI cocycle identity h(Phi(Z)) |det(I - Z0* Z)|^2 = h(Z) h(Z0)") {
  Rng rng(29);
  const DomainSpec d = DomainSpec::type_i(2, 2);
  const Atom& atom = d.atoms()[0];
  DomainPoint z0(4);
  z0 << 0.5, 0.0, 0.0, 0.0;  // diag(0.5, 0)
  const Transvection T(d, z0);
  CHECK(T.apply(z0).norm() < 1e-15);
  const MatrixXcd Z0 = unpack_at(atom, z0);
  for (int trial = 0; trial < 20; ++trial) {
    const DomainPoint z = sample_interior(d, rng, 0.95);
    const MatrixXcd Z = unpack_at(atom, z);
    const Complex det =
        (MatrixXcd::Identity(2, 2) - Z0.adjoint() * Z).determinant();
    const double lhs = generic_norm(d, T.apply(z)) * std::norm(det);
    const double rhs = generic_norm(d, z) * generic_norm(d, z0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("transvection differential matches finite differences") {
  Rng rng(37);
  for (const DomainSpec& d : kAllKinds) {
    const DomainPoint z0 = sample_interior(d, rng, 0.7);
    const Transvection T(d, z0);
    for (int trial = 0; trial < 5; ++trial) {
      const DomainPoint z = sample_interior(d, rng, 0.7);
      const VectorXcd v = rng.gaussian_vector(d.dim());
      const VectorXcd dv = T.differential(z, v);
      const double h = 1e-5;
      const VectorXcd fd = (T.apply(z + h * v) - T.apply(z - h * v)) / (2.0 * h);
      CHECK((dv - fd).norm() < 1e-7 * std::max(1.0, dv.norm()));
    }
  }
}

TEST_CASE("pullback isometry defect") {
  const DomainSpec disk = DomainSpec::disk();
  // identity transvection
  CHECK(pullback_isometry_defect(disk, Transvection(disk, pt({0.0})), pt({0.3})) <
        1e-12);
  // exact Mobius invariance of the Poincare metric
  CHECK(pullback_isometry_defect(disk, Transvection(disk, pt({0.5})), pt({0.2})) <
        1e-8);

  Rng rng(43);
  for (const DomainSpec& d : kAllKinds) {
    int tested = 0;
    while (tested < 100) {
      const DomainPoint z0 = sample_interior(d, rng, 0.9);
      const DomainPoint z = sample_interior(d, rng, 0.9);
      if (boundary_distance(d, z0) < 0.05 || boundary_distance(d, z) < 0.05)
        continue;  // spec samples at boundary_distance >= 0.05
      const Transvection T(d, z0);
      CHECK(pullback_isometry_defect(d, T, z) <= 1e-6);
      ++tested;
    }
  }
}
