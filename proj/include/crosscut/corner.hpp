#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "crosscut/errors.hpp"
#include "crosscut/gcp.hpp"
#include "crosscut/lifting.hpp"
#include "crosscut/numeric.hpp"
#include "crosscut/simplex.hpp"

namespace crosscut {

// Corner relaxation (b, R, P) of selected tableau rows. R holds the columns
// of continuous nonbasics, P those of integer nonbasics; col maps record the
// originating LP column of each. b is stored as the fixed representative with
// fractional coordinates in (-1, 0) and integral coordinates at 0.
struct CornerSystem {
  int n = 0;
  Eigen::VectorXd b;
  Eigen::MatrixXd R;
  Eigen::MatrixXd P;
  std::vector<int> rcol_map;
  std::vector<int> pcol_map;
  std::vector<int> frac_rows;  // positions (0..n-1) with fractional b
};

// Cut in the nonbasic space of a CornerSystem; right-hand side is 1.
struct NonbasicCut {
  Eigen::VectorXd rcoef;
  Eigen::VectorXd pcoef;
};

namespace detail {

inline double reduce_b(double bbar) {
  if (int_dist(bbar) < kIntTol) return 0.0;
  return frac(bbar) - 1.0;
}

}  // namespace detail

inline CornerSystem build_corner(const LpOutcome& out, const StandardFormLp& lp,
                                 const std::vector<int>& rows,
                                 const std::vector<std::uint8_t>& integer_mask) {
  if (out.status != LpStatus::Optimal)
    throw NotOptimal("build_corner: outcome is not optimal");
  if (static_cast<int>(integer_mask.size()) != lp.cols())
    throw DimensionMismatch("build_corner: mask size mismatch");
  std::set<int> seen;
  for (int r : rows) {
    if (r < 0 || r >= lp.rows())
      throw RowOutOfRange("build_corner: row " + std::to_string(r));
    if (!seen.insert(r).second)
      throw RowOutOfRange("build_corner: duplicate row " + std::to_string(r));
  }

  const int n = static_cast<int>(rows.size());
  const int d = lp.cols();
  CornerSystem cs;
  cs.n = n;
  cs.b.resize(n);

  Eigen::MatrixXd abar(n, d);
  for (int i = 0; i < n; ++i) {
    auto [bbar, row] = tableau_row(out, lp, rows[i]);
    cs.b[i] = detail::reduce_b(bbar);
    abar.row(i) = row;
    const int basic_col = out.basis[rows[i]];
    if (integer_mask[basic_col] && int_dist(bbar) >= kIntTol)
      cs.frac_rows.push_back(i);
  }
  if (cs.frac_rows.empty())
    throw NoFractionalRow("build_corner: no selected row is fractional");

  std::vector<bool> basic(d, false);
  for (int c : out.basis)
    if (c < d) basic[c] = true;
  for (int j = 0; j < d; ++j) {
    if (basic[j]) continue;
    if (integer_mask[j])
      cs.pcol_map.push_back(j);
    else
      cs.rcol_map.push_back(j);
  }
  cs.R.resize(n, static_cast<int>(cs.rcol_map.size()));
  cs.P.resize(n, static_cast<int>(cs.pcol_map.size()));
  for (int c = 0; c < cs.R.cols(); ++c) cs.R.col(c) = abar.col(cs.rcol_map[c]);
  for (int c = 0; c < cs.P.cols(); ++c) cs.P.col(c) = abar.col(cs.pcol_map[c]);
  return cs;
}

// Single-row Gomory mixed-integer cut. With f0 the fractional part of the
// row's rhs: continuous column r gets max(r/f0, -r/(1-f0)), integer column p
// with fp = frac(p) gets min(fp/f0, (1-fp)/(1-f0)).
inline NonbasicCut gmi_cut(const CornerSystem& cs) {
  if (cs.n != 1) throw NotSingleRow("gmi_cut: corner system must have one row");
  const double f0 = cs.b[0] + 1.0;
  if (f0 <= kIntTol || f0 >= 1.0 - kIntTol)
    throw NoFractionalRow("gmi_cut: row is not fractional");
  NonbasicCut cut;
  cut.rcoef.resize(cs.R.cols());
  cut.pcoef.resize(cs.P.cols());
  for (int j = 0; j < cs.R.cols(); ++j) {
    const double r = cs.R(0, j);
    cut.rcoef[j] = std::max(r / f0, -r / (1.0 - f0));
  }
  for (int j = 0; j < cs.P.cols(); ++j) {
    const double fp = frac(cs.P(0, j));
    cut.pcoef[j] = std::min(fp / f0, (1.0 - fp) / (1.0 - f0));
  }
  return cut;
}

// X-cut: regular cross-polytope with weights nu and center at the origin
// (f = -b), evaluated through the separable O(n) paths.
inline NonbasicCut generate_xcut(const CornerSystem& cs,
                                 const Eigen::VectorXd& nu) {
  if (nu.size() != cs.n)
    throw WeightError("generate_xcut: weight vector has wrong size");
  for (int i = 0; i < cs.n; ++i)
    if (cs.b[i] > -kIntTol)
      throw RowsNotAllFractional("generate_xcut: row " + std::to_string(i) +
                                 " is not fractional");
  GcpDescriptor g = build_nested(nu, -cs.b);
  NonbasicCut cut;
  cut.rcoef.resize(cs.R.cols());
  cut.pcoef.resize(cs.P.cols());
  for (int j = 0; j < cs.R.cols(); ++j)
    cut.rcoef[j] = gauge_separable(g, cs.b, cs.R.col(j));
  for (int j = 0; j < cs.P.cols(); ++j)
    cut.pcoef[j] = trivial_lift_separable(g, cs.b, cs.P.col(j));
  return cut;
}

// GX-cut: nested cross-polytope with weights nu and center f in (0,1)^n.
// The b representative keeps the origin interior whenever at least one
// selected row is fractional.
inline NonbasicCut generate_gxcut(const CornerSystem& cs,
                                  const Eigen::VectorXd& nu,
                                  const Eigen::VectorXd& f) {
  if (nu.size() != cs.n || f.size() != cs.n)
    throw WeightError("generate_gxcut: parameter size mismatch");
  GcpDescriptor g = build_nested(nu, f);
  FacetNormals fn = normals(g, cs.b);
  NonbasicCut cut;
  cut.rcoef.resize(cs.R.cols());
  cut.pcoef.resize(cs.P.cols());
  for (int j = 0; j < cs.R.cols(); ++j) cut.rcoef[j] = gauge(fn, cs.R.col(j));
  for (int j = 0; j < cs.P.cols(); ++j)
    cut.pcoef[j] = trivial_lift(g, cs.b, cs.P.col(j));
  return cut;
}

// Expresses a nonbasic-space cut over the LP columns through the col maps.
inline StructuralCut to_structural(const NonbasicCut& cut, const CornerSystem& cs,
                                   int total_cols) {
  StructuralCut sc;
  double largest = 0.0;
  auto push = [&](const std::vector<int>& map, const Eigen::VectorXd& coef) {
    for (int j = 0; j < coef.size(); ++j) {
      if (map[j] < 0 || map[j] >= total_cols)
        throw ColumnOutOfRange("to_structural: column " + std::to_string(map[j]));
      sc.terms.emplace_back(map[j], coef[j]);
      largest = std::max(largest, std::abs(coef[j]));
    }
  };
  push(cs.rcol_map, cut.rcoef);
  push(cs.pcol_map, cut.pcoef);
  sc.warn_all_zero = largest <= 1e-12;
  return sc;
}

namespace detail {

// Exact integer determinant (Bareiss fraction-free elimination).
inline long long integer_determinant(Eigen::Matrix<long long, Eigen::Dynamic,
                                                   Eigen::Dynamic> m) {
  const int n = static_cast<int>(m.rows());
  long long prev = 1, sign = 1;
  for (int c = 0; c < n - 1; ++c) {
    if (m(c, c) == 0) {
      int swap = -1;
      for (int r = c + 1; r < n; ++r)
        if (m(r, c) != 0) { swap = r; break; }
      if (swap < 0) return 0;
      m.row(c).swap(m.row(swap));
      sign = -sign;
    }
    for (int r = c + 1; r < n; ++r)
      for (int j = c + 1; j < n; ++j)
        m(r, j) = (m(r, j) * m(c, c) - m(r, c) * m(c, j)) / prev;
    prev = m(c, c);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace detail

// Transforms the system by a unimodular U: (U b reduced, U R, U P). The set
// X(R, P) is unchanged, so cuts from the image are valid for the original.
inline CornerSystem apply_unimodular(
    const CornerSystem& cs,
    const Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>& u) {
  if (u.rows() != cs.n || u.cols() != cs.n)
    throw DimensionMismatch("apply_unimodular: U has wrong shape");
  const long long det = detail::integer_determinant(u);
  if (det != 1 && det != -1)
    throw NotUnimodular("apply_unimodular: determinant is " +
                        std::to_string(det));
  Eigen::MatrixXd ud = u.cast<double>();
  CornerSystem t;
  t.n = cs.n;
  t.rcol_map = cs.rcol_map;
  t.pcol_map = cs.pcol_map;
  Eigen::VectorXd ub = ud * cs.b;
  t.b.resize(cs.n);
  for (int i = 0; i < cs.n; ++i) {
    t.b[i] = detail::reduce_b(ub[i]);
    if (t.b[i] < -kIntTol) t.frac_rows.push_back(i);
  }
  t.R = ud * cs.R;
  t.P = ud * cs.P;
  return t;
}

struct ValidityReport {
  long points_checked = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  bool vacuous = false;
  bool all_valid = true;
};

// Exhaustive check of the cut against every y in {0..bound}^l whose image
// P y lands on b + Z^n.
inline ValidityReport check_validity_pure_integer(const NonbasicCut& cut,
                                                  const CornerSystem& cs,
                                                  int bound) {
  if (cs.R.cols() != 0)
    throw DimensionMismatch(
        "check_validity_pure_integer: continuous columns present");
  const int l = static_cast<int>(cs.P.cols());
  double combos = 1.0;
  for (int j = 0; j < l; ++j) {
    combos *= bound + 1;
    if (combos > 1e6)
      throw TooManyPoints("check_validity_pure_integer: > 1e6 points");
  }

  ValidityReport rep;
  std::vector<int> y(l, 0);
  while (true) {
    Eigen::VectorXd img = Eigen::VectorXd::Zero(cs.n);
    for (int j = 0; j < l; ++j) img += static_cast<double>(y[j]) * cs.P.col(j);
    bool on_lattice = true;
    for (int i = 0; i < cs.n; ++i)
      if (int_dist(img[i] - cs.b[i]) > kFeasTol) { on_lattice = false; break; }
    // y = 0 maps to the origin, which is off b + Z^n whenever b is.
    if (on_lattice) {
      double lhs = 0.0;
      for (int j = 0; j < l; ++j) lhs += cut.pcoef[j] * y[j];
      const double slack = lhs - 1.0;
      ++rep.points_checked;
      rep.worst_slack = std::min(rep.worst_slack, slack);
      if (slack < -kIntTol) rep.all_valid = false;
    }

    int axis = 0;
    while (axis < l && ++y[axis] > bound) {
      y[axis] = 0;
      ++axis;
    }
    if (axis == l) break;
  }
  rep.vacuous = rep.points_checked == 0;
  return rep;
}

}  // namespace crosscut
