#include <doctest.h>

#include "symdom/domains.hpp"

using namespace symdom;

namespace {

DomainPoint pt(std::initializer_list<Complex> vals) {
  DomainPoint z(static_cast<int>(vals.size()));
  int i = 0;
  for (Complex v : vals) z[i++] = v;
  return z;
}

}  // namespace

TEST_CASE("dimension, rank and genus tables") {
  const DomainSpec i23 = DomainSpec::type_i(2, 3);
  CHECK(i23.dim() == 6);
  CHECK(i23.rank() == 2);
  CHECK(i23.genus_per_factor() == std::vector<int>{5});
  CHECK_FALSE(i23.is_tube());

  const DomainSpec ii4 = DomainSpec::type_ii(4);
  CHECK(ii4.dim() == 6);
  CHECK(ii4.rank() == 2);
  CHECK(ii4.genus_per_factor() == std::vector<int>{6});
  CHECK(ii4.is_tube());

  const DomainSpec ii5 = DomainSpec::type_ii(5);
  CHECK(ii5.dim() == 10);
  CHECK(ii5.rank() == 2);
  CHECK_FALSE(ii5.is_tube());

  const DomainSpec iii3 = DomainSpec::type_iii(3);
  CHECK(iii3.dim() == 6);
  CHECK(iii3.rank() == 3);
  CHECK(iii3.genus_per_factor() == std::vector<int>{4});

  const DomainSpec iv5 = DomainSpec::type_iv(5);
  CHECK(iv5.dim() == 5);
  CHECK(iv5.rank() == 2);
  CHECK(iv5.genus_per_factor() == std::vector<int>{5});

  const DomainSpec poly = DomainSpec::polydisk(3);
  CHECK(poly.dim() == 3);
  CHECK(poly.rank() == 3);
  CHECK(poly.genus_per_factor() == std::vector<int>{2, 2, 2});

  const DomainSpec prod = DomainSpec::product({i23, poly});
  CHECK(prod.dim() == 9);
  CHECK(prod.rank() == 5);
  CHECK(prod.genus_per_factor() == std::vector<int>{5, 2, 2, 2});

  CHECK_THROWS_AS(DomainSpec::type_i(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::type_iv(2), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::type_ii(1), std::invalid_argument);
}

TEST_CASE("pack/unpack round trip is exact") {
  Rng rng(11);
  for (const DomainSpec& d :
       {DomainSpec::type_i(2, 3), DomainSpec::type_ii(5), DomainSpec::type_iii(3),
        DomainSpec::type_iv(4), DomainSpec::polydisk(2),
        DomainSpec::product({DomainSpec::type_ii(4), DomainSpec::disk()})}) {
    for (int trial = 0; trial < 8; ++trial) {
      const VectorXcd z = rng.gaussian_vector(d.dim());
      for (const auto& a : d.atoms()) {
        const VectorXcd seg = z.segment(a.offset, a.dim);
        const VectorXcd back = pack(a, unpack(a, seg));
        for (int i = 0; i < a.dim; ++i) CHECK(back[i] == seg[i]);  // bitwise
      }
      // matrix views respect the symmetry class
      for (const auto& a : d.atoms()) {
        const MatrixXcd m = unpack(a, z.segment(a.offset, a.dim));
        if (a.kind == Kind::TypeII) CHECK((m + m.transpose()).norm() == 0.0);
        if (a.kind == Kind::TypeIII) CHECK((m - m.transpose()).norm() == 0.0);
      }
    }
  }
}

TEST_CASE("generic norm: frozen examples") {
  // disk at 0.5: det(1 - 0.25)
  CHECK(generic_norm(DomainSpec::disk(), pt({0.5})) == doctest::Approx(0.75));
  // any domain at the origin gives 1
  for (const DomainSpec& d : {DomainSpec::type_i(2, 2), DomainSpec::type_ii(4),
                              DomainSpec::type_iii(2), DomainSpec::type_iv(3)})
    CHECK(generic_norm(d, VectorXcd::Zero(d.dim())) == doctest::Approx(1.0));
  // Lie ball: 1 - 2|z|^2 + |z^t z|^2 at (0.5, 0, 0)
  CHECK(generic_norm(DomainSpec::type_iv(3), pt({0.5, 0.0, 0.0})) ==
        doctest::Approx(0.5625));
}

TEST_CASE("generic norm positive inside, decreasing along rays") {
  Rng rng(5);
  for (const DomainSpec& d :
       {DomainSpec::type_i(2, 2), DomainSpec::type_i(2, 3), DomainSpec::type_ii(4),
        DomainSpec::type_iii(2), DomainSpec::type_iv(3), DomainSpec::polydisk(2)}) {
    for (int i = 0; i < 500; ++i) {
      const DomainPoint z = sample_interior(d, rng, 0.999);
      CHECK(generic_norm(d, z) > 0.0);
    }
    for (int ray = 0; ray < 100; ++ray) {
      const VectorXcd dir = rng.gaussian_vector(d.dim());
      const double cross = boundary_crossing_scale(d, dir);
      double prev = 1.0 + 1e-15;
      for (int s = 1; s <= 20; ++s) {
        const double t = 0.999 * s / 20.0;
        const double h = generic_norm(d, (t * cross) * dir);
        CHECK(h < prev);
        prev = h;
      }
      CHECK(prev < 0.1);  // h -> 0 toward the boundary
    }
  }
}

TEST_CASE("polydisk generic norm is the product of disk factors") {
  Rng rng(3);
  const DomainSpec d = DomainSpec::polydisk(3);
  for (int i = 0; i < 50; ++i) {
    const DomainPoint z = sample_interior(d, rng, 0.99);
    double expect = 1.0;
    for (int j = 0; j < 3; ++j) expect *= 1.0 - std::norm(z[j]);
    CHECK(generic_norm(d, z) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("contains: frozen examples") {
  CHECK(contains(DomainSpec::disk(), pt({0.5}), 0.0));
  DomainPoint z(4);
  z << 1.2, 0.0, 0.0, 0.0;  // diag(1.2, 0) packed row-major
  CHECK_FALSE(contains(DomainSpec::type_i(2, 2), z, 0.0));
  CHECK_FALSE(contains(DomainSpec::polydisk(2), pt({0.5, 0.99}), 0.02));
  CHECK(contains(DomainSpec::polydisk(2), pt({0.5, 0.99}), 0.0));
  CHECK_THROWS_AS(contains(DomainSpec::disk(), pt({0.5}), -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(contains(DomainSpec::disk(), pt({0.5, 0.1}), 0.0),
                  std::invalid_argument);
}

TEST_CASE("bergman kernel: frozen examples") {
  const auto at0 = bergman_kernel(DomainSpec::disk(), pt({0.0}), kDiskVolume);
  CHECK(at0.value == doctest::Approx(1.0 / kPi));
  CHECK(at0.volume_constant == kDiskVolume);
  CHECK(bergman_kernel(DomainSpec::disk(), pt({0.5})).value ==
        doctest::Approx(std::pow(0.75, -2.0)));
  CHECK(bergman_kernel(DomainSpec::polydisk(2), pt({0.5, 0.5})).value ==
        doctest::Approx(std::pow(0.75, -4.0)));
  CHECK_THROWS_AS(bergman_kernel(DomainSpec::disk(), pt({1.0})),
                  std::domain_error);
}

TEST_CASE("boundary distance: examples and ray limits") {
  CHECK(boundary_distance(DomainSpec::disk(), pt({0.5})) == doctest::Approx(0.5));
  DomainPoint z(4);
  z << 0.5, 0.0, 0.0, 0.3;  // diag(0.5, 0.3): 1 - s_max via the SVD oracle
  CHECK(boundary_distance(DomainSpec::type_i(2, 2), z) == doctest::Approx(0.5));
  CHECK(boundary_distance(DomainSpec::polydisk(2), pt({0.5, 0.9})) ==
        doctest::Approx(0.1));
  CHECK_THROWS_AS(boundary_distance(DomainSpec::disk(), pt({1.5})),
                  std::domain_error);

  Rng rng(17);
  for (const DomainSpec& d : {DomainSpec::type_i(2, 2), DomainSpec::type_iv(3),
                              DomainSpec::polydisk(2)}) {
    for (int ray = 0; ray < 20; ++ray) {
      const VectorXcd dir = rng.gaussian_vector(d.dim());
      const double cross = boundary_crossing_scale(d, dir);
      double prev = 10.0;
      for (double t : {0.3, 0.9, 0.99, 0.9999}) {
        const double bd = boundary_distance(d, (t * cross) * dir);
        CHECK(bd > 0.0);
        CHECK(bd < prev);
        prev = bd;
      }
      CHECK(prev < 1e-3);
    }
  }
}

TEST_CASE("TypeIV boundary distance against a search oracle") {
  const DomainSpec d = DomainSpec::type_iv(3);

  // Canonical-plane points: the predicted nearest boundary point is
  // ((1+z2)/2, i(1-z2)/2, 0) with z2 = a - b, at distance (1-(a+b))/sqrt(2).
  for (auto [a, b] : std::vector<std::pair<double, double>>{
           {0.3, 0.1}, {0.5, 0.0}, {0.45, 0.45}, {0.0, 0.0}}) {
    const DomainPoint z = pt({a, Complex(0.0, b), 0.0});
    REQUIRE(contains(d, z, 0.0));
    const double claimed = boundary_distance(d, z);
    CHECK(claimed == doctest::Approx((1.0 - (a + b)) / std::sqrt(2.0)));
    const double z2 = a - b;
    const DomainPoint zb = pt({0.5 * (1.0 + z2), Complex(0.0, 0.5 * (1.0 - z2)), 0.0});
    CHECK(std::abs(generic_norm(d, zb)) < 1e-12);  // candidate is on the boundary
    CHECK((z - zb).norm() == doctest::Approx(claimed).epsilon(1e-10));
  }

  // Random interior points: no sampled segment to the boundary is shorter
  // than the closed form, and many directions come close to it.
  Rng rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    const DomainPoint z = sample_interior(d, rng, 0.9);
    const double claimed = boundary_distance(d, z);
    double best = 1e9;
    Rng rng2(1000 + trial);
    for (int probe = 0; probe < 3000; ++probe) {
      VectorXcd dir = rng2.gaussian_vector(3);
      dir /= dir.norm();
      double lo = 0.0, hi = 2.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (contains(d, z + mid * dir, 0.0) ? lo : hi) = mid;
      }
      best = std::min(best, lo);
    }
    CHECK(claimed <= best + 1e-9);
    CHECK(claimed >= 0.9 * best);
  }
}
