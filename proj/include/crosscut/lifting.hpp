#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "crosscut/errors.hpp"
#include "crosscut/gcp.hpp"
#include "crosscut/numeric.hpp"

namespace crosscut {

// Point to lift together with its unique translate in the half-open anchor
// cell b + z + [0,1)^n.
struct LiftQuery {
  Eigen::VectorXd b;
  Eigen::VectorXd p;
  Eigen::VectorXd p_hat;
};

inline LiftQuery make_lift_query(const GcpDescriptor& g, const Eigen::VectorXd& b,
                                 const Eigen::VectorXd& p) {
  const int n = g.dim();
  if (b.size() != n || p.size() != n)
    throw DimensionMismatch("make_lift_query: dimension mismatch");
  LiftQuery q;
  q.b = b;
  q.p = p;
  q.p_hat.resize(n);
  for (int i = 0; i < n; ++i)
    q.p_hat[i] = p[i] + std::ceil(b[i] + g.z[i] - p[i]);
  return q;
}

enum class LiftMethod {
  Exact,          // segment ratio test + convex integer search per axis
  SlopeShortcut,  // two extreme-slope normals and rounded crossing point
};

namespace detail {

// Exact minimum of the convex piecewise-linear phi(M) = max_i (dot_i + M*s_i)
// over the integers of the segment {phi <= 1}. Returns 1 if no integer lies
// in the segment; M = 0 is always evaluated as a fallback candidate.
inline double axis_min_exact(const Eigen::VectorXd& dots,
                             const Eigen::VectorXd& slopes) {
  const double kInf = std::numeric_limits<double>::infinity();
  double lam_lo = -kInf, lam_hi = kInf;
  for (int i = 0; i < dots.size(); ++i) {
    const double s = slopes[i];
    if (s > kInteriorTol)
      lam_hi = std::min(lam_hi, (1.0 - dots[i]) / s);
    else if (s < -kInteriorTol)
      lam_lo = std::max(lam_lo, (1.0 - dots[i]) / s);
    else if (dots[i] > 1.0 + kGeomTol)
      return 1.0;  // flat piece already above 1: segment empty
  }

  auto phi = [&](double lam) { return (dots + lam * slopes).maxCoeff(); };
  double best = std::min(1.0, phi(0.0));
  if (!std::isfinite(lam_lo) || !std::isfinite(lam_hi))
    return best;  // unbounded body in this direction; the clamp at 1 rules

  long lo = static_cast<long>(std::ceil(lam_lo - kGeomTol));
  long hi = static_cast<long>(std::floor(lam_hi + kGeomTol));
  if (lo > hi) return best;
  while (lo < hi) {
    long mid = lo + (hi - lo) / 2;
    if (phi(static_cast<double>(mid)) <= phi(static_cast<double>(mid + 1)))
      hi = mid;
    else
      lo = mid + 1;
  }
  return std::min(best, phi(static_cast<double>(lo)));
}

// The two-normal shortcut: nearest nonpositive and nearest positive slope
// (ties by larger dot), crossing point lambda-bar, evaluate the two rounded
// integers on their own linear pieces. Heuristic over the 2^n pieces.
inline double axis_min_shortcut(const Eigen::VectorXd& dots,
                                const Eigen::VectorXd& slopes) {
  int ineg = -1, ipos = -1;
  for (int i = 0; i < dots.size(); ++i) {
    const double s = slopes[i];
    if (s <= 0.0) {
      if (ineg < 0 || s > slopes[ineg] ||
          (s == slopes[ineg] && dots[i] > dots[ineg]))
        ineg = i;
    } else {
      if (ipos < 0 || s < slopes[ipos] ||
          (s == slopes[ipos] && dots[i] > dots[ipos]))
        ipos = i;
    }
  }
  if (ineg < 0 || ipos < 0) return 1.0;
  const double lam_bar =
      (dots[ipos] - dots[ineg]) / (slopes[ineg] - slopes[ipos]);
  return std::min(dots[ipos] + std::ceil(lam_bar) * slopes[ipos],
                  dots[ineg] + std::floor(lam_bar) * slopes[ineg]);
}

}  // namespace detail

// Trivial lifting of the gauge of b + G at p: translate p into the anchor
// cell, then minimize the gauge along each coordinate axis over integer
// steps and clamp at 1.
inline double trivial_lift(const GcpDescriptor& g, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& p,
                           LiftMethod method = LiftMethod::Exact) {
  FacetNormals fn = normals(g, b);
  LiftQuery q = make_lift_query(g, b, p);
  Eigen::VectorXd dots = fn.a * q.p_hat;
  double best = 1.0;
  for (int j = 0; j < g.dim(); ++j) {
    const Eigen::VectorXd slopes = fn.a.col(j);
    const double mj = method == LiftMethod::Exact
                          ? detail::axis_min_exact(dots, slopes)
                          : detail::axis_min_shortcut(dots, slopes);
    best = std::min(best, mj);
  }
  return std::max(0.0, best);
}

// O(n) trivial lifting on a regular cross-polytope: each coordinate factor is
// the one-dimensional lifting of its interval [l_i, u_i] around the origin.
inline double trivial_lift_separable(const GcpDescriptor& g,
                                     const Eigen::VectorXd& b,
                                     const Eigen::VectorXd& p) {
  detail::require_regular(g, b);
  if (p.size() != g.dim())
    throw DimensionMismatch("trivial_lift_separable: dimension mismatch");
  double total = 0.0;
  for (int i = 0; i < g.dim(); ++i) {
    const double u = b[i] + g.z[i] + 1.0;  // right endpoint, > 0
    const double l = b[i] + g.z[i];        // left endpoint, < 0
    const double t = frac(p[i]);
    total += g.nu[i] * std::min(t / u, (1.0 - t) / (-l));
  }
  return std::min(1.0, total);
}

// Direct evaluation of the lifting formula: min(1, min over integer z in
// {-radius..radius}^n of gauge(p + z)). Exact whenever the radius covers the
// box of {gauge <= 1} around p; translates are visited center-outward and the
// max-loop stops early once the running value exceeds the best so far.
inline double trivial_lift_bruteforce(const FacetNormals& fn,
                                      const Eigen::VectorXd& p, int radius = 5) {
  const int n = fn.dim();
  if (p.size() != n)
    throw DimensionMismatch("trivial_lift_bruteforce: dimension mismatch");

  std::vector<long> offsets;
  offsets.reserve(2 * radius + 1);
  offsets.push_back(0);
  for (int r = 1; r <= radius; ++r) {
    offsets.push_back(r);
    offsets.push_back(-r);
  }

  const int m = fn.count();
  Eigen::VectorXd x = p;
  std::vector<int> pos(n, 0);
  double best = 1.0;
  // Odometer over the offset table, least-significant axis first.
  while (true) {
    double val = 0.0;
    for (int i = 0; i < m; ++i) {
      val = std::max(val, fn.a.row(i).dot(x));
      if (val >= best) break;
    }
    best = std::min(best, val);
    if (best <= 0.0) return 0.0;

    int axis = 0;
    while (axis < n) {
      if (++pos[axis] < static_cast<int>(offsets.size())) {
        x[axis] = p[axis] + static_cast<double>(offsets[pos[axis]]);
        break;
      }
      pos[axis] = 0;
      x[axis] = p[axis];
      ++axis;
    }
    if (axis == n) break;
  }
  return best;
}

// Truncated lower bound on any lifting at p:
// max over N = 1..n_max of (1 - lift(b - N p)) / N, reported unclamped.
inline double pi_min_truncated(const FacetNormals& fn, const Eigen::VectorXd& b,
                               const Eigen::VectorXd& p, int n_max,
                               int radius = 5) {
  double best = -std::numeric_limits<double>::infinity();
  for (int N = 1; N <= n_max; ++N) {
    const double lift = trivial_lift_bruteforce(fn, b - N * p, radius);
    best = std::max(best, (1.0 - lift) / N);
  }
  return best;
}

// The thin-triangle family T_i with b = (-0.5, -0.5): a steep left wall and
// two shallow edges meeting at the lattice point (0.5, -0.5), whose lower
// edge flattens onto the lattice line y = -0.5 as i grows.
inline FacetNormals make_badlift_triangle(long i) {
  const double alpha = 1.0 + 1.0 / static_cast<double>(i);
  const double beta = 1.0 / static_cast<double>(i);
  // Each line v.x + c = 0 is divided by the magnitude of its value at the
  // origin and oriented so the triangle contains the origin: a = -v / c.
  const Eigen::Vector3d cs(8.75, (1.0 - alpha) / 2.0, (1.0 + beta) / 2.0);
  Eigen::Matrix<double, 3, 2> lines;
  lines << 20.0, -1.0, alpha, 1.0, -beta, 1.0;
  FacetNormals fn;
  fn.a = Eigen::MatrixXd(3, 2);
  for (int r = 0; r < 3; ++r) fn.a.row(r) = -lines.row(r) / cs[r];
  return fn;
}

}  // namespace crosscut
