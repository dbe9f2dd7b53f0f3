#include <catch2/catch_amalgamated.hpp>

#include "crosscut/gcp.hpp"
#include "crosscut/lifting.hpp"
#include "crosscut/rng.hpp"
#include "test_util.hpp"

using namespace crosscut;
using testutil::vec;
using Catch::Approx;

namespace {

GcpDescriptor diamond() {
  return build_nested(vec({0.5, 0.5}), vec({-0.5, -0.5}));
}

}  // namespace

TEST_CASE("lift query: translate lands in the half-open anchor cell") {
  Rng rng(5150);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    GcpDescriptor g = testutil::random_nested(rng, n);
    Eigen::VectorXd b = testutil::random_interior_b(rng, g);
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) p[i] = rng.uniform(-3.0, 3.0);
    LiftQuery q = make_lift_query(g, b, p);
    for (int i = 0; i < n; ++i) {
      CHECK(int_dist(q.p_hat[i] - p[i]) < 1e-12);
      const double off = q.p_hat[i] - b[i] - g.z[i];
      CHECK(off >= -1e-12);
      CHECK(off < 1.0);
    }
  }
}

TEST_CASE("trivial_lift: diamond examples") {
  GcpDescriptor g = diamond();
  Eigen::VectorXd b = vec({0.5, 0.5});
  CHECK(trivial_lift(g, b, vec({0.7, 0.7})) == Approx(0.6));
  CHECK(trivial_lift(g, b, vec({0.0, 0.0})) == Approx(0.0).margin(1e-15));
  CHECK(trivial_lift(g, b, vec({0.5, 0.5})) == Approx(1.0));
}

TEST_CASE("trivial_lift_bruteforce: diamond examples") {
  FacetNormals fn = normals(diamond(), vec({0.5, 0.5}));
  CHECK(trivial_lift_bruteforce(fn, vec({0.7, 0.7}), 3) == Approx(0.6));
  CHECK(trivial_lift_bruteforce(fn, vec({0.0, 0.0}), 1) ==
        Approx(0.0).margin(1e-15));
  CHECK(trivial_lift_bruteforce(fn, vec({0.3, 0.3}), 3) == Approx(0.6));
}

TEST_CASE("trivial_lift_separable: values agree with the enumeration oracle") {
  GcpDescriptor g1 = build_nested(vec({1.0}), vec({0.3}));
  Eigen::VectorXd b1 = vec({-0.3});
  // p = 0.7 sits on the shifted lattice -0.3 + Z, so no translate enters the
  // interior and the lifting is exactly 1.
  const double oracle1 = trivial_lift_bruteforce(normals(g1, b1), vec({0.7}), 3);
  CHECK(oracle1 == Approx(1.0));
  CHECK(trivial_lift_separable(g1, b1, vec({0.7})) == Approx(oracle1));

  GcpDescriptor g2 = diamond();
  Eigen::VectorXd b2 = vec({0.5, 0.5});
  const double oracle2 =
      trivial_lift_bruteforce(normals(g2, b2), vec({0.25, 0.25}), 3);
  CHECK(oracle2 == Approx(0.5));
  CHECK(trivial_lift_separable(g2, b2, vec({0.25, 0.25})) == Approx(oracle2));

  CHECK(trivial_lift_separable(g2, b2, vec({3.0, -2.0})) ==
        Approx(0.0).margin(1e-15));
  CHECK_THROWS_AS(trivial_lift_separable(g2, vec({0.4, 0.5}), vec({0.5, 0.5})),
                  NotRegular);
}

TEST_CASE("trivial_lift equals brute force on random descriptors") {
  Rng rng(987654);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    GcpDescriptor g = rng.coin() ? testutil::random_nested(rng, n)
                                 : testutil::random_recursive(rng, n);
    Eigen::VectorXd b = testutil::random_interior_b(rng, g);
    FacetNormals fn = normals(g, b);
    const int radius = testutil::covering_radius(g, b);
    for (int pt = 0; pt < 4; ++pt) {
      Eigen::VectorXd p(n);
      for (int i = 0; i < n; ++i) p[i] = rng.uniform(-2.0, 2.0);
      const double exact = trivial_lift(g, b, p);
      const double brute = trivial_lift_bruteforce(fn, p, radius);
      CHECK(exact == Approx(brute).margin(1e-7));
    }
  }
}

TEST_CASE("trivial_lift: periodicity and bounds") {
  Rng rng(1357);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(2));
    GcpDescriptor g = rng.coin() ? testutil::random_nested(rng, n)
                                 : testutil::random_recursive(rng, n);
    Eigen::VectorXd b = testutil::random_interior_b(rng, g);
    FacetNormals fn = normals(g, b);
    Eigen::VectorXd p(n), shift(n);
    for (int i = 0; i < n; ++i) {
      p[i] = rng.uniform(-2.0, 2.0);
      shift[i] = static_cast<double>(rng.uniform_int(-3, 3));
    }
    const double lift = trivial_lift(g, b, p);
    CHECK(trivial_lift(g, b, (p + shift).eval()) == Approx(lift).margin(1e-9));
    CHECK(lift <= std::min(1.0, gauge(fn, p)) + 1e-9);
  }
}

TEST_CASE("separable lifting equals exact lifting on regular descriptors") {
  Rng rng(2468);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    GcpDescriptor g = testutil::random_nested(rng, n);
    Eigen::VectorXd b = -g.f;
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) p[i] = rng.uniform(-2.0, 2.0);
    CHECK(trivial_lift_separable(g, b, p) ==
          Approx(trivial_lift(g, b, p)).margin(1e-9));
  }
}

TEST_CASE("slope shortcut is exact on regular descriptors") {
  Rng rng(80211);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    GcpDescriptor g = testutil::random_nested(rng, n);
    Eigen::VectorXd b = -g.f;
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) p[i] = rng.uniform(-2.0, 2.0);
    CHECK(trivial_lift(g, b, p, LiftMethod::SlopeShortcut) ==
          Approx(trivial_lift(g, b, p)).margin(1e-9));
  }
}

TEST_CASE("pi_min_truncated: diamond example") {
  FacetNormals fn = normals(diamond(), vec({0.5, 0.5}));
  const double v =
      pi_min_truncated(fn, vec({0.5, 0.5}), vec({0.25, 0.25}), 4, 4);
  CHECK(v == Approx(0.5));
}

TEST_CASE("pi_min_truncated is below the trivial lifting") {
  Rng rng(31415);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2;
    GcpDescriptor g = testutil::random_nested(rng, n);
    Eigen::VectorXd b = testutil::random_interior_b(rng, g);
    FacetNormals fn = normals(g, b);
    const int radius = testutil::covering_radius(g, b) + 4;
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) p[i] = rng.uniform(-1.0, 1.0);
    CHECK(pi_min_truncated(fn, b, p, 6, radius) <=
          trivial_lift_bruteforce(fn, p, radius) + 1e-9);
  }
}

TEST_CASE("badlift triangle: i=1 normals") {
  FacetNormals fn = make_badlift_triangle(1);
  REQUIRE(fn.count() == 3);
  std::vector<Eigen::Vector2d> expect{
      {-20.0 / 8.75, 1.0 / 8.75}, {4.0, 2.0}, {1.0, -1.0}};
  for (const auto& e : expect) CHECK(testutil::matches_some_normal(e, fn));
}

TEST_CASE("badlift triangle: incidence and freeness") {
  Eigen::VectorXd b = vec({-0.5, -0.5});
  for (long i : {1L, 5L, 20L, 100L}) {
    FacetNormals fn = make_badlift_triangle(i);
    // the lattice point (0.5, -0.5) is a vertex of every triangle
    CHECK(gauge(fn, vec({0.5, -0.5})) == Approx(1.0));
    CHECK(gauge(fn, vec({0.0, 0.0})) == Approx(0.0).margin(1e-15));
    // b + Z^2 never enters the interior
    for (int dx = -4; dx <= 4; ++dx)
      for (int dy = -4; dy <= 4; ++dy)
        CHECK(gauge(fn, vec({b[0] + dx, b[1] + dy})) >= 1.0 - 1e-9);
  }
}

TEST_CASE("badlift triangle: lifting at p is one, pi_min shrinks") {
  Eigen::VectorXd b = vec({-0.5, -0.5}), p = vec({0.5, 0.0});
  FacetNormals t100 = make_badlift_triangle(100);
  CHECK(trivial_lift_bruteforce(t100, p, 12) == 1.0);
  const double bound = pi_min_truncated(t100, b, p, 20, 13);
  CHECK(bound > 0.0);
  CHECK(bound <= 0.05);
}
