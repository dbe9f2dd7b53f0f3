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

TEST_CASE("build_nested: diamond weights and anchor") {
  GcpDescriptor g = diamond();
  CHECK(g.z[0] == -1.0);
  CHECK(g.z[1] == -1.0);
  // relative normals are the four sign patterns of (1, 1)
  REQUIRE(g.w.rows() == 4);
  for (long r = 0; r < 4; ++r) {
    CHECK(std::abs(g.w(r, 0)) == Approx(1.0));
    CHECK(std::abs(g.w(r, 1)) == Approx(1.0));
  }
}

TEST_CASE("build_nested: one-dimensional interval endpoints") {
  GcpDescriptor g = build_nested(vec({1.0}), vec({0.3}));
  CHECK(g.z[0] == 0.0);
  CHECK(g.w.maxCoeff() == Approx(1.0 / 0.7));
  CHECK(g.w.minCoeff() == Approx(-1.0 / 0.3));
}

TEST_CASE("build_nested: rejects bad input") {
  CHECK_THROWS_AS(build_nested(vec({0.5, 0.5}), vec({0.5, 1.0})),
                  DegenerateCenter);
  CHECK_THROWS_AS(build_nested(vec({0.7, 0.5}), vec({0.5, 0.5})), WeightError);
  CHECK_THROWS_AS(build_nested(vec({1.2, -0.2}), vec({0.5, 0.5})), WeightError);
}

TEST_CASE("build_recursive: matches the nested diamond") {
  std::vector<RecursiveStage> stages{{0.5, 0.5, vec({0.5})}};
  GcpDescriptor rec = build_recursive(0, stages);
  GcpDescriptor nest = build_nested(vec({0.5, 0.5}), vec({0.5, 0.5}));
  REQUIRE(rec.w.rows() == nest.w.rows());
  // same normal set (row order may differ)
  for (long r = 0; r < rec.w.rows(); ++r) {
    bool found = false;
    for (long s = 0; s < nest.w.rows(); ++s)
      if ((rec.w.row(r) - nest.w.row(s)).lpNorm<Eigen::Infinity>() < 1e-12)
        found = true;
    CHECK(found);
  }
  CHECK((rec.center - nest.center).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("build_recursive: boundary center rejected") {
  std::vector<RecursiveStage> stages{{0.5, 0.5, vec({1.5})}};
  CHECK_THROWS_AS(build_recursive(0, stages), CenterNotInterior);
}

TEST_CASE("build_recursive: asymmetric quadrilateral matches hull oracle") {
  std::vector<RecursiveStage> stages{{0.25, 0.75, vec({0.5})}};
  GcpDescriptor g = build_recursive(0, stages);
  Eigen::VectorXd b = -g.center;  // center the body at the origin
  FacetNormals fn = normals(g, b);
  REQUIRE(fn.count() == 4);
  auto oracle = testutil::hull_normals_2d(vertices(g), b);
  for (const auto& a : oracle) CHECK(testutil::matches_some_normal(a, fn));
}

TEST_CASE("normals: diamond at b = (0.5, 0.5) is the l1 ball") {
  FacetNormals fn = normals(diamond(), vec({0.5, 0.5}));
  REQUIRE(fn.count() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(fn.a(i, 0)) == Approx(1.0));
    CHECK(std::abs(fn.a(i, 1)) == Approx(1.0));
  }
}

TEST_CASE("normals: 1-D interval reciprocals") {
  GcpDescriptor g = build_nested(vec({1.0}), vec({0.3}));
  FacetNormals fn = normals(g, vec({-0.3}));
  CHECK(fn.a.maxCoeff() == Approx(1.0 / 0.7));
  CHECK(fn.a.minCoeff() == Approx(-1.0 / 0.3));
}

TEST_CASE("normals: origin outside b+G rejected") {
  CHECK_THROWS_AS(normals(diamond(), vec({1.5, 0.5})), OriginNotInterior);
}

TEST_CASE("gauge: diamond values") {
  FacetNormals fn = normals(diamond(), vec({0.5, 0.5}));
  CHECK(gauge(fn, vec({0.5, 0.0})) == Approx(0.5));
  CHECK(gauge(fn, vec({1.0, 1.0})) == Approx(2.0));
  CHECK(gauge(fn, vec({-0.3, 0.1})) == Approx(0.4));
  CHECK_THROWS_AS(gauge(fn, vec({1.0})), DimensionMismatch);
}

TEST_CASE("gauge_separable: regular evaluations and NotRegular") {
  GcpDescriptor g2 = diamond();
  Eigen::VectorXd b = vec({0.5, 0.5});
  CHECK(gauge_separable(g2, b, vec({0.5, 0.0})) == Approx(0.5));

  GcpDescriptor g1 = build_nested(vec({1.0}), vec({0.3}));
  CHECK(gauge_separable(g1, vec({-0.3}), vec({-0.2})) == Approx(2.0 / 3.0));

  CHECK_THROWS_AS(gauge_separable(g2, vec({0.4, 0.5}), vec({1.0, 0.0})),
                  NotRegular);
}

TEST_CASE("gauge properties on random descriptors") {
  Rng rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    GcpDescriptor g = rng.coin() ? testutil::random_nested(rng, n)
                                 : testutil::random_recursive(rng, n);
    Eigen::VectorXd b = testutil::random_interior_b(rng, g);
    FacetNormals fn = normals(g, b);

    Eigen::VectorXd r1(n), r2(n);
    for (int i = 0; i < n; ++i) {
      r1[i] = rng.uniform(-3.0, 3.0);
      r2[i] = rng.uniform(-3.0, 3.0);
    }
    const double t = rng.uniform(0.0, 10.0);
    // positive homogeneity
    CHECK(gauge(fn, (t * r1).eval()) ==
          Approx(t * gauge(fn, r1)).margin(1e-9 * (1.0 + t)));
    // subadditivity
    CHECK(gauge(fn, (r1 + r2).eval()) <=
          gauge(fn, r1) + gauge(fn, r2) + 1e-9);
  }
}

TEST_CASE("lattice-freeness and anchor cell on random descriptors") {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(2));
    GcpDescriptor g = rng.coin() ? testutil::random_nested(rng, n)
                                 : testutil::random_recursive(rng, n);
    Eigen::VectorXd b = testutil::random_interior_b(rng, g);
    FacetNormals fn = normals(g, b);

    // every shifted lattice point in a window has gauge >= 1
    std::vector<int> idx(n, -4);
    while (true) {
      Eigen::VectorXd wpt(n);
      for (int i = 0; i < n; ++i) wpt[i] = b[i] + idx[i];
      if (wpt.lpNorm<Eigen::Infinity>() <= 4.0)
        CHECK(gauge(fn, wpt) >= 1.0 - 1e-9);
      int axis = 0;
      while (axis < n && ++idx[axis] > 4) idx[axis] = -4, ++axis;
      if (axis == n) break;
    }

    // all corners of the anchor cell b + z + [0,1]^n lie inside
    for (long corner = 0; corner < (1L << n); ++corner) {
      Eigen::VectorXd pt(n);
      for (int i = 0; i < n; ++i)
        pt[i] = b[i] + g.z[i] + ((corner >> i) & 1 ? 1.0 : 0.0);
      CHECK(gauge(fn, pt) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("fast path equals general path on regular descriptors") {
  Rng rng(4242);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    GcpDescriptor g = testutil::random_nested(rng, n);
    Eigen::VectorXd b = -g.f;
    FacetNormals fn = normals(g, b);
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i) r[i] = rng.uniform(-3.0, 3.0);
    CHECK(gauge_separable(g, b, r) == Approx(gauge(fn, r)).margin(1e-9));
  }
}

TEST_CASE("vertices: diamond hull") {
  Eigen::MatrixXd v = vertices(build_nested(vec({0.5, 0.5}), vec({0.5, 0.5})));
  REQUIRE(v.rows() == 4);
  // expected: (-0.5,0.5),(1.5,0.5),(0.5,-0.5),(0.5,1.5)
  std::vector<Eigen::Vector2d> expect{
      {-0.5, 0.5}, {1.5, 0.5}, {0.5, -0.5}, {0.5, 1.5}};
  for (const auto& e : expect) {
    bool found = false;
    for (long r = 0; r < v.rows(); ++r)
      if ((v.row(r).transpose() - e).norm() < 1e-12) found = true;
    CHECK(found);
  }
}
