#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "crosscut/errors.hpp"
#include "crosscut/instances.hpp"
#include "crosscut/numeric.hpp"
#include "crosscut/simplex.hpp"

namespace crosscut {

enum class IpStatus { Optimal, Infeasible, NodeLimit };

struct IpOutcome {
  IpStatus status = IpStatus::Infeasible;
  double objective = 0.0;
  Eigen::VectorXd incumbent;  // empty when no feasible point was found
  long nodes = 0;

  bool has_incumbent() const { return incumbent.size() > 0; }
};

namespace detail {

struct BbBound {
  int var;
  double value;
  bool is_upper;
};

struct BbNode {
  double bound;
  long id;
  std::vector<BbBound> bounds;
};

struct BbNodeOrder {
  bool operator()(const BbNode& a, const BbNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // best bound first
    return a.id > b.id;
  }
};

// Branching bounds become rows x_j + s = u (or x_j - s = l) so the one
// standard-form solver covers the whole search.
inline StandardFormLp with_bounds(const StandardFormLp& base,
                                  const std::vector<BbBound>& bounds) {
  const int k = base.rows(), d = base.cols();
  const int m = static_cast<int>(bounds.size());
  if (m == 0) return base;
  StandardFormLp lp;
  lp.A = Eigen::MatrixXd::Zero(k + m, d + m);
  lp.A.topLeftCorner(k, d) = base.A;
  lp.rhs.resize(k + m);
  lp.rhs.head(k) = base.rhs;
  lp.cost = Eigen::VectorXd::Zero(d + m);
  lp.cost.head(d) = base.cost;
  for (int i = 0; i < m; ++i) {
    lp.A(k + i, bounds[i].var) = 1.0;
    lp.A(k + i, d + i) = bounds[i].is_upper ? 1.0 : -1.0;
    lp.rhs[k + i] = bounds[i].value;
  }
  return lp;
}

}  // namespace detail

// LP-based best-bound branch and bound, branching on the most fractional
// integer variable.
inline IpOutcome branch_and_bound(const MipInstance& inst, long node_limit) {
  const StandardFormLp base = inst.to_lp();
  IpOutcome out;
  double inc_obj = std::numeric_limits<double>::infinity();

  std::priority_queue<detail::BbNode, std::vector<detail::BbNode>,
                      detail::BbNodeOrder>
      open;
  long next_id = 0;
  open.push({-std::numeric_limits<double>::infinity(), next_id++, {}});

  while (!open.empty()) {
    if (out.nodes >= node_limit) {
      out.status = IpStatus::NodeLimit;
      if (out.has_incumbent()) out.objective = inc_obj;
      return out;
    }
    detail::BbNode node = open.top();
    open.pop();
    if (node.bound >= inc_obj - 1e-9) continue;

    ++out.nodes;
    LpOutcome lp = solve(detail::with_bounds(base, node.bounds));
    if (lp.status == LpStatus::Infeasible) continue;
    if (lp.status == LpStatus::Unbounded)
      throw NumericalFailure("branch_and_bound: unbounded relaxation");
    if (lp.objective >= inc_obj - 1e-9) continue;

    int branch_var = -1;
    double branch_score = kIntTol;
    for (int j = 0; j < inst.d; ++j) {
      if (!inst.integer_mask[j]) continue;
      const double dist = int_dist(lp.x[j]);
      if (dist > branch_score) {
        branch_score = dist;
        branch_var = j;
      }
    }
    if (branch_var < 0) {
      inc_obj = lp.objective;
      out.incumbent = lp.x.head(inst.d);
      continue;
    }

    const double v = lp.x[branch_var];
    detail::BbNode down{lp.objective, next_id++, node.bounds};
    down.bounds.push_back({branch_var, std::floor(v), true});
    detail::BbNode up{lp.objective, next_id++, node.bounds};
    up.bounds.push_back({branch_var, std::ceil(v), false});
    open.push(std::move(down));
    open.push(std::move(up));
  }

  if (out.has_incumbent()) {
    out.status = IpStatus::Optimal;
    out.objective = inc_obj;
  } else {
    out.status = IpStatus::Infeasible;
  }
  return out;
}

// Every feasible point whose integer part lies in {0..box_j}: each integer
// assignment is completed on the continuous columns by a feasibility LP.
inline std::vector<Eigen::VectorXd> enumerate_feasible(
    const MipInstance& inst, const std::vector<long>& box) {
  if (static_cast<int>(box.size()) != inst.d)
    throw DimensionMismatch("enumerate_feasible: box size mismatch");
  std::vector<int> int_cols, cont_cols;
  for (int j = 0; j < inst.d; ++j)
    (inst.integer_mask[j] ? int_cols : cont_cols).push_back(j);

  double combos = 1.0;
  for (int j : int_cols) {
    combos *= static_cast<double>(box[j] + 1);
    if (combos > 1e6) throw TooManyPoints("enumerate_feasible: > 1e6 points");
  }

  StandardFormLp sub;
  sub.A.resize(inst.k, static_cast<int>(cont_cols.size()));
  for (int c = 0; c < static_cast<int>(cont_cols.size()); ++c)
    sub.A.col(c) = inst.A.col(cont_cols[c]);
  sub.cost = Eigen::VectorXd::Zero(sub.A.cols());

  std::vector<Eigen::VectorXd> points;
  std::vector<long> y(int_cols.size(), 0);
  while (true) {
    Eigen::VectorXd residual = inst.rhs;
    for (std::size_t i = 0; i < int_cols.size(); ++i)
      residual -= static_cast<double>(y[i]) * inst.A.col(int_cols[i]);

    bool feasible;
    Eigen::VectorXd cont;
    if (cont_cols.empty()) {
      feasible = residual.lpNorm<Eigen::Infinity>() <= kIntTol;
    } else {
      sub.rhs = residual;
      LpOutcome lp = solve(sub);
      feasible = lp.status == LpStatus::Optimal;
      if (feasible) cont = lp.x;
    }
    if (feasible) {
      Eigen::VectorXd pt = Eigen::VectorXd::Zero(inst.d);
      for (std::size_t i = 0; i < int_cols.size(); ++i)
        pt[int_cols[i]] = static_cast<double>(y[i]);
      for (std::size_t i = 0; i < cont_cols.size(); ++i)
        pt[cont_cols[i]] = cont[static_cast<int>(i)];
      points.push_back(std::move(pt));
    }

    std::size_t axis = 0;
    while (axis < y.size() && ++y[axis] > box[int_cols[axis]]) {
      y[axis] = 0;
      ++axis;
    }
    if (axis == y.size()) break;
  }
  return points;
}

}  // namespace crosscut
