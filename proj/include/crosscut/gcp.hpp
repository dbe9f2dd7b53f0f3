#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "crosscut/errors.hpp"
#include "crosscut/numeric.hpp"

namespace crosscut {

inline constexpr double kGeomTol = 1e-9;
inline constexpr double kInteriorTol = 1e-12;

enum class GcpKind { Nested, Recursive };

// One recursion stage: hull of the scaled previous polytope at height gamma
// and a scaled unit interval through the point c of the previous polytope.
struct RecursiveStage {
  double gamma = 0.0;       // non-integral height of the new coordinate
  double mu = 0.5;          // mixing weight in (0, 1)
  Eigen::VectorXd c;        // interior point of the previous polytope
};

// A generalized cross-polytope, stored with its relative-to-center facet
// normals. The Nested kind is the simplex-weight parameterization (nu, f)
// with sum(nu) = 1; the Recursive kind keeps the stage data explicitly.
struct GcpDescriptor {
  GcpKind kind = GcpKind::Nested;
  Eigen::VectorXd nu;       // Nested only: n positive weights, sum 1
  Eigen::VectorXd f;        // Nested only: center, every coordinate fractional
  long gamma1 = 0;          // Recursive only: left endpoint of the stage-1 interval
  std::vector<RecursiveStage> stages;  // Recursive only: stages 2..n

  Eigen::VectorXd center;   // center of the polytope (== f for Nested)
  Eigen::VectorXd z;        // anchor cell corner: z + [0,1]^n sits inside
  Eigen::MatrixXd w;        // 2^n x n normals relative to the center

  int dim() const { return static_cast<int>(center.size()); }
};

// Facet normals a^1..a^m of a polyhedron {x : a^i.x <= 1} with the origin in
// its interior. Rows of `a` are the normals.
struct FacetNormals {
  Eigen::MatrixXd a;

  int dim() const { return static_cast<int>(a.cols()); }
  int count() const { return static_cast<int>(a.rows()); }
};

namespace detail {

// Interval factor of coordinate i for a nested descriptor: relative to the
// center, the slab is [z_i - f_i, z_i + 1 - f_i] with 0 strictly inside.
inline std::pair<double, double> interval_normals(double f_i, double z_i) {
  return {1.0 / (z_i + 1.0 - f_i), 1.0 / (z_i - f_i)};
}

// All sign-pattern combinations w^sigma_i = base(i, sigma_i).
inline Eigen::MatrixXd sign_pattern_matrix(
    const std::vector<std::pair<double, double>>& hi) {
  const int n = static_cast<int>(hi.size());
  const long rows = 1L << n;
  Eigen::MatrixXd w(rows, n);
  for (long s = 0; s < rows; ++s)
    for (int i = 0; i < n; ++i)
      w(s, i) = (s >> i) & 1 ? hi[i].first : hi[i].second;
  return w;
}

}  // namespace detail

// Builds the nested descriptor from normalized weights nu (sum 1) and a
// center f with no integral coordinate; the anchor cell is floor(f).
inline GcpDescriptor build_nested(const Eigen::VectorXd& nu,
                                  const Eigen::VectorXd& f) {
  const int n = static_cast<int>(nu.size());
  if (n == 0 || f.size() != n)
    throw DimensionMismatch("build_nested: nu and f must have equal size");
  if (std::abs(nu.sum() - 1.0) > 1e-12)
    throw WeightError("build_nested: weights must sum to 1");
  for (int i = 0; i < n; ++i)
    if (nu[i] <= 0.0) throw WeightError("build_nested: weights must be positive");
  for (int i = 0; i < n; ++i)
    if (near_integer(f[i], kGeomTol))
      throw DegenerateCenter("build_nested: center coordinate " +
                             std::to_string(i) + " is integral");

  GcpDescriptor g;
  g.kind = GcpKind::Nested;
  g.nu = nu;
  g.f = f;
  g.center = f;
  g.z = f.array().floor().matrix();
  std::vector<std::pair<double, double>> hi(n);
  for (int i = 0; i < n; ++i) hi[i] = detail::interval_normals(f[i], g.z[i]);
  g.w = detail::sign_pattern_matrix(hi);
  for (int i = 0; i < n; ++i) g.w.col(i) *= nu[i];
  return g;
}

// Builds a descriptor by the stage recursion. Stage j >= 3 first re-centers
// the previous normals to c_j (g -> g / (1 - g.delta), delta = c_j minus the
// previous center, which requires c_j strictly interior), then pairs them
// with the interval normals of I_floor(gamma_j) - gamma_j.
inline GcpDescriptor build_recursive(long gamma1,
                                     const std::vector<RecursiveStage>& stages) {
  GcpDescriptor g;
  g.kind = GcpKind::Recursive;
  g.gamma1 = gamma1;
  g.stages = stages;

  const int n = static_cast<int>(stages.size()) + 1;
  g.z.resize(n);
  g.z[0] = static_cast<double>(gamma1);

  if (n == 1) {
    // Plain interval [gamma1, gamma1 + 1]; any interior reference point gives
    // the same absolute normals, so use the midpoint.
    g.center.resize(1);
    g.center[0] = gamma1 + 0.5;
    g.w.resize(2, 1);
    g.w(0, 0) = 2.0;
    g.w(1, 0) = -2.0;
    return g;
  }

  Eigen::VectorXd center;
  Eigen::MatrixXd w;
  for (int j = 0; j < static_cast<int>(stages.size()); ++j) {
    const RecursiveStage& st = stages[j];
    const int prev_dim = j + 1;
    if (st.c.size() != prev_dim)
      throw DimensionMismatch("build_recursive: stage " + std::to_string(j + 2) +
                              " center has wrong dimension");
    if (st.mu <= 0.0 || st.mu >= 1.0)
      throw WeightError("build_recursive: mu must lie strictly in (0,1)");
    if (near_integer(st.gamma, kGeomTol))
      throw DegenerateGamma("build_recursive: stage " + std::to_string(j + 2) +
                            " gamma is integral");

    if (j == 0) {
      // Interval normals relative to c_2, which must be interior.
      const double lo = static_cast<double>(gamma1), c0 = st.c[0];
      if (c0 - lo <= kInteriorTol || lo + 1.0 - c0 <= kInteriorTol)
        throw CenterNotInterior("build_recursive: c_2 not interior to the interval");
      w.resize(2, 1);
      w(0, 0) = 1.0 / (lo + 1.0 - c0);
      w(1, 0) = 1.0 / (lo - c0);
    } else {
      Eigen::VectorXd delta = st.c - center;
      Eigen::ArrayXd denom = 1.0 - (w * delta).array();
      if ((denom <= kInteriorTol).any())
        throw CenterNotInterior("build_recursive: stage " + std::to_string(j + 2) +
                                " center not interior");
      w = (w.array().colwise() / denom).matrix();
    }

    const double gz = std::floor(st.gamma);
    g.z[prev_dim] = gz;
    auto [hp, hm] = detail::interval_normals(st.gamma, gz);

    Eigen::MatrixXd next(2 * w.rows(), prev_dim + 1);
    next.block(0, 0, w.rows(), prev_dim) = st.mu * w;
    next.block(w.rows(), 0, w.rows(), prev_dim) = st.mu * w;
    next.col(prev_dim).head(w.rows()).setConstant((1.0 - st.mu) * hp);
    next.col(prev_dim).tail(w.rows()).setConstant((1.0 - st.mu) * hm);
    w = std::move(next);

    center.conservativeResize(prev_dim + 1);
    center.head(prev_dim) = st.c;
    center[prev_dim] = st.gamma;
  }

  g.center = center;
  g.w = w;
  return g;
}

// Absolute facet normals of b + G: a = w / (1 + w.p0) with p0 = b + center.
// Fails unless the origin is strictly interior to b + G.
inline FacetNormals normals(const GcpDescriptor& g, const Eigen::VectorXd& b) {
  if (b.size() != g.dim())
    throw DimensionMismatch("normals: b has wrong dimension");
  Eigen::VectorXd p0 = b + g.center;
  Eigen::ArrayXd denom = 1.0 + (g.w * p0).array();
  if ((denom <= kInteriorTol).any())
    throw OriginNotInterior("normals: origin not strictly interior to b+G");
  FacetNormals fn;
  fn.a = (g.w.array().colwise() / denom).matrix();
  return fn;
}

// Polyhedral gauge max_i a^i.r, clamped below at zero.
inline double gauge(const FacetNormals& fn, const Eigen::VectorXd& r) {
  if (r.size() != fn.dim())
    throw DimensionMismatch("gauge: vector has wrong dimension");
  return std::max(0.0, (fn.a * r).maxCoeff());
}

namespace detail {

inline void require_regular(const GcpDescriptor& g, const Eigen::VectorXd& b) {
  if (g.kind != GcpKind::Nested)
    throw NotRegular("separable path requires a nested descriptor");
  if (b.size() != g.dim())
    throw DimensionMismatch("separable path: b has wrong dimension");
  if ((b + g.f).lpNorm<Eigen::Infinity>() > kGeomTol)
    throw NotRegular("separable path requires center b + f = 0");
}

}  // namespace detail

// O(n) gauge for a regular cross-polytope (center of b+G at the origin):
// sum_i nu_i * max(h_i^+ r_i, h_i^- r_i).
inline double gauge_separable(const GcpDescriptor& g, const Eigen::VectorXd& b,
                              const Eigen::VectorXd& r) {
  detail::require_regular(g, b);
  if (r.size() != g.dim())
    throw DimensionMismatch("gauge_separable: vector has wrong dimension");
  double total = 0.0;
  for (int i = 0; i < g.dim(); ++i) {
    auto [hp, hm] = detail::interval_normals(g.f[i], g.z[i]);
    total += g.nu[i] * std::max(hp * r[i], hm * r[i]);
  }
  return std::max(0.0, total);
}

// Vertices of G in absolute coordinates, one per row (2n of them). Used to
// bound the body when choosing enumeration radii.
inline Eigen::MatrixXd vertices(const GcpDescriptor& g) {
  const int n = g.dim();
  if (g.kind == GcpKind::Nested) {
    Eigen::MatrixXd v(2 * n, n);
    for (int i = 0; i < n; ++i) {
      auto [hp, hm] = detail::interval_normals(g.f[i], g.z[i]);
      v.row(2 * i) = g.f;
      v(2 * i, i) += 1.0 / (g.nu[i] * hp);
      v.row(2 * i + 1) = g.f;
      v(2 * i + 1, i) += 1.0 / (g.nu[i] * hm);
    }
    return v;
  }
  Eigen::MatrixXd v(2, 1);
  v(0, 0) = static_cast<double>(g.gamma1);
  v(1, 0) = static_cast<double>(g.gamma1) + 1.0;
  for (int j = 0; j < static_cast<int>(g.stages.size()); ++j) {
    const RecursiveStage& st = g.stages[j];
    const int prev_dim = j + 1;
    Eigen::MatrixXd next(v.rows() + 2, prev_dim + 1);
    for (long r = 0; r < v.rows(); ++r) {
      next.row(r).head(prev_dim) =
          (v.row(r).transpose() - st.c) / st.mu + st.c;
      next(r, prev_dim) = st.gamma;
    }
    const double gz = std::floor(st.gamma);
    next.row(v.rows()).head(prev_dim) = st.c;
    next(v.rows(), prev_dim) = (gz - st.gamma) / (1.0 - st.mu) + st.gamma;
    next.row(v.rows() + 1).head(prev_dim) = st.c;
    next(v.rows() + 1, prev_dim) = (gz + 1.0 - st.gamma) / (1.0 - st.mu) + st.gamma;
    v = std::move(next);
  }
  return v;
}

}  // namespace crosscut
