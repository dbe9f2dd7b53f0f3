#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "crosscut/gcp.hpp"
#include "crosscut/lifting.hpp"
#include "crosscut/rng.hpp"

namespace testutil {

using namespace crosscut;

inline Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<long>(v.size()));
  int i = 0;
  for (double e : v) x[i++] = e;
  return x;
}

// Weights bounded away from zero so random bodies stay within a small box.
inline Eigen::VectorXd tame_weights(Rng& rng, int n) {
  std::vector<double> raw = rng.simplex(n);
  Eigen::VectorXd nu(n);
  for (int i = 0; i < n; ++i) nu[i] = 0.5 / n + 0.5 * raw[i];
  nu /= nu.sum();
  return nu;
}

inline GcpDescriptor random_nested(Rng& rng, int n, double frac_lo = 0.2,
                                   double frac_hi = 0.8) {
  Eigen::VectorXd nu = tame_weights(rng, n);
  Eigen::VectorXd f(n);
  for (int i = 0; i < n; ++i)
    f[i] = static_cast<double>(rng.uniform_int(-2, 2)) +
           rng.uniform(frac_lo, frac_hi);
  return build_nested(nu, f);
}

inline GcpDescriptor random_recursive(Rng& rng, int n, double mu_lo = 0.55,
                                      double mu_hi = 0.75) {
  long gamma1 = rng.uniform_int(-2, 2);
  std::vector<RecursiveStage> stages;
  for (int j = 2; j <= n; ++j) {
    GcpDescriptor prev = build_recursive(gamma1, stages);
    Eigen::MatrixXd v = vertices(prev);
    Eigen::VectorXd center = prev.kind == GcpKind::Recursive && j == 2
                                 ? vec({static_cast<double>(gamma1) + 0.5})
                                 : prev.center;
    const long pick = static_cast<long>(rng.below(v.rows()));
    RecursiveStage st;
    st.c = center + rng.uniform(0.0, 0.6) * (v.row(pick).transpose() - center);
    st.gamma = static_cast<double>(rng.uniform_int(-2, 2)) + rng.uniform(0.2, 0.8);
    st.mu = rng.uniform(mu_lo, mu_hi);
    stages.push_back(st);
  }
  return build_recursive(gamma1, stages);
}

// A b with the origin strictly interior to b+G: start at -center and jitter,
// shrinking the jitter until the normals exist.
inline Eigen::VectorXd random_interior_b(Rng& rng, const GcpDescriptor& g,
                                         double jitter = 0.3) {
  Eigen::VectorXd delta(g.dim());
  for (int i = 0; i < g.dim(); ++i) delta[i] = rng.uniform(-jitter, jitter);
  for (int tries = 0; tries < 60; ++tries) {
    Eigen::VectorXd b = -g.center + delta;
    try {
      normals(g, b);
      return b;
    } catch (const OriginNotInterior&) {
      delta *= 0.5;
    }
  }
  return -g.center;
}

// Enumeration radius covering the box of b+G, from the vertex coordinates.
inline int covering_radius(const GcpDescriptor& g, const Eigen::VectorXd& b) {
  Eigen::MatrixXd v = vertices(g);
  double extent = 0.0;
  for (long r = 0; r < v.rows(); ++r)
    extent = std::max(extent,
                      (v.row(r).transpose() + b).lpNorm<Eigen::Infinity>());
  return static_cast<int>(std::ceil(extent)) + 1;
}

// Independent facet-normal oracle for planar bodies: hyperplanes through
// consecutive hull vertices, each normalized to a.x = 1.
inline std::vector<Eigen::Vector2d> hull_normals_2d(Eigen::MatrixXd verts,
                                                    const Eigen::VectorXd& b) {
  const long m = verts.rows();
  for (long r = 0; r < m; ++r) verts.row(r) += b.transpose();
  Eigen::RowVector2d centroid = verts.colwise().mean();
  std::vector<long> order(m);
  for (long r = 0; r < m; ++r) order[r] = r;
  std::sort(order.begin(), order.end(), [&](long a, long c) {
    const auto pa = verts.row(a) - centroid, pc = verts.row(c) - centroid;
    return std::atan2(pa[1], pa[0]) < std::atan2(pc[1], pc[0]);
  });
  std::vector<Eigen::Vector2d> out;
  for (long r = 0; r < m; ++r) {
    Eigen::Matrix2d sys;
    sys.row(0) = verts.row(order[r]);
    sys.row(1) = verts.row(order[(r + 1) % m]);
    out.push_back(sys.colPivHouseholderQr().solve(Eigen::Vector2d::Ones()));
  }
  return out;
}

inline bool matches_some_normal(const Eigen::Vector2d& a,
                                const FacetNormals& fn, double tol = 1e-9) {
  for (int i = 0; i < fn.count(); ++i)
    if ((fn.a.row(i).transpose() - a).lpNorm<Eigen::Infinity>() <= tol)
      return true;
  return false;
}

}  // namespace testutil
