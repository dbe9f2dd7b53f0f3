#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "crosscut/errors.hpp"

namespace crosscut {

inline constexpr double kFeasTol = 1e-7;
inline constexpr double kPivotTol = 1e-9;
inline constexpr double kIntTol = 1e-6;

enum class LpStatus { Optimal, Infeasible, Unbounded };

// min cost.x  s.t.  A x = rhs, x >= 0
struct StandardFormLp {
  Eigen::MatrixXd A;
  Eigen::VectorXd rhs;
  Eigen::VectorXd cost;

  int rows() const { return static_cast<int>(A.rows()); }
  int cols() const { return static_cast<int>(A.cols()); }

  void validate() const {
    if (rhs.size() != A.rows() || cost.size() != A.cols())
      throw DimensionMismatch("StandardFormLp: inconsistent dimensions");
    if (!A.allFinite() || !rhs.allFinite() || !cost.allFinite())
      throw NumericalFailure("StandardFormLp: non-finite entry");
  }
};

// A cut over the structural columns of some LP: sum of terms >= 1.
struct StructuralCut {
  std::vector<std::pair<int, double>> terms;  // (column, coefficient)
  bool warn_all_zero = false;

  double value_at(const Eigen::VectorXd& x) const {
    double v = 0.0;
    for (const auto& [j, c] : terms) v += c * x[j];
    return v;
  }
};

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;          // structural values, length d
  std::vector<int> basis;     // k column indices into A
  Eigen::MatrixXd binv;       // basis inverse, k x k
};

namespace detail {

// Revised primal simplex over an explicit basis inverse. Artificial columns
// are sign(rhs_r) * e_r, so A and rhs never need row flips; artificial column
// indices are d + r.
class SimplexWork {
 public:
  explicit SimplexWork(const StandardFormLp& lp)
      : lp_(lp), k_(lp.rows()), d_(lp.cols()) {
    art_sign_.resize(k_);
    basis_.resize(k_);
    in_basis_.assign(d_, false);
    for (int r = 0; r < k_; ++r) {
      art_sign_[r] = lp_.rhs[r] < 0.0 ? -1.0 : 1.0;
      basis_[r] = d_ + r;
    }
    binv_ = Eigen::MatrixXd::Zero(k_, k_);
    for (int r = 0; r < k_; ++r) binv_(r, r) = art_sign_[r];
    xb_ = binv_ * lp_.rhs;
  }

  // Runs pricing and pivoting until optimal or unbounded for the given
  // costs. Only structural columns may enter the basis.
  LpStatus iterate(const Eigen::VectorXd& structural_cost, double artificial_cost) {
    const long max_iter = 20000 + 200L * (k_ + d_);
    int degenerate_streak = 0;
    for (long iter = 0; iter < max_iter; ++iter) {
      Eigen::VectorXd cb(k_);
      for (int r = 0; r < k_; ++r)
        cb[r] = cost_of(basis_[r], structural_cost, artificial_cost);
      Eigen::VectorXd y = binv_.transpose() * cb;
      Eigen::VectorXd reduced = structural_cost - lp_.A.transpose() * y;

      const bool bland = degenerate_streak >= 50;
      int enter = pick_entering(reduced, bland);
      if (enter < 0) return LpStatus::Optimal;

      Eigen::VectorXd col = binv_ * lp_.A.col(enter);
      int leave = pick_leaving(col, bland);
      if (leave == -1) {
        // Candidate pivots all below tolerance: scan the remaining entering
        // candidates in reduced-cost order before giving up.
        if (!retry_entering(reduced, enter, col, leave)) {
          if (leave == -2) return LpStatus::Unbounded;
          throw NumericalFailure("simplex: no usable pivot above tolerance");
        }
      }
      if (leave == -2) return LpStatus::Unbounded;

      const double ratio = xb_[leave] / col[leave];
      degenerate_streak = ratio <= 1e-12 ? degenerate_streak + 1 : 0;

      pivot(enter, leave, col);
      if (++pivots_since_refactor_ >= 100) refactorize();
    }
    throw NumericalFailure("simplex: iteration limit reached");
  }

  // Degenerate swap that removes a basic artificial after phase 1. Pivots on
  // any structural column with a nonzero tableau entry in that row; the basic
  // value is zero, so feasibility is preserved for either pivot sign.
  bool force_out_artificial(int row) {
    Eigen::RowVectorXd tab_row = binv_.row(row) * lp_.A;
    int best = -1;
    for (int j = 0; j < d_; ++j) {
      if (in_basis_[j]) continue;
      if (std::abs(tab_row[j]) <= kPivotTol) continue;
      if (best < 0 || std::abs(tab_row[j]) > std::abs(tab_row[best])) best = j;
    }
    if (best < 0) return false;
    Eigen::VectorXd col = binv_ * lp_.A.col(best);
    pivot(best, row, col);
    return true;
  }

  void refactorize() {
    Eigen::MatrixXd B(k_, k_);
    for (int r = 0; r < k_; ++r) B.col(r) = column(basis_[r]);
    binv_ = B.partialPivLu().inverse();
    xb_ = binv_ * lp_.rhs;
    pivots_since_refactor_ = 0;
  }

  double phase_objective(const Eigen::VectorXd& structural_cost,
                         double artificial_cost) const {
    double obj = 0.0;
    for (int r = 0; r < k_; ++r)
      obj += cost_of(basis_[r], structural_cost, artificial_cost) * xb_[r];
    return obj;
  }

  const std::vector<int>& basis() const { return basis_; }
  const Eigen::MatrixXd& binv() const { return binv_; }
  const Eigen::VectorXd& xb() const { return xb_; }

 private:
  Eigen::VectorXd column(int j) const {
    if (j < d_) return lp_.A.col(j);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(k_);
    e[j - d_] = art_sign_[j - d_];
    return e;
  }

  double cost_of(int j, const Eigen::VectorXd& structural_cost,
                 double artificial_cost) const {
    return j < d_ ? structural_cost[j] : artificial_cost;
  }

  int pick_entering(const Eigen::VectorXd& reduced, bool bland) const {
    if (bland) {
      for (int j = 0; j < d_; ++j)
        if (!in_basis_[j] && reduced[j] < -kPivotTol) return j;
      return -1;
    }
    int best = -1;
    double best_val = -kFeasTol;
    for (int j = 0; j < d_; ++j) {
      if (in_basis_[j]) continue;
      if (reduced[j] < best_val) {
        best_val = reduced[j];
        best = j;
      }
    }
    return best;
  }

  // Returns the leaving row, -1 if every candidate pivot is below tolerance
  // while some positive entry exists, -2 if the column is unbounded.
  int pick_leaving(const Eigen::VectorXd& col, bool bland) const {
    int best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    bool any_positive = false;
    for (int r = 0; r < k_; ++r) {
      if (col[r] <= kPivotTol) {
        if (col[r] > 0.0) any_positive = true;
        continue;
      }
      const double ratio = xb_[r] / col[r];
      if (ratio < best_ratio - 1e-12) {
        best_ratio = ratio;
        best = r;
      } else if (best >= 0 && ratio < best_ratio + 1e-12) {
        if (bland ? basis_[r] < basis_[best]
                  : std::abs(col[r]) > std::abs(col[best]))
          best = r;
      }
    }
    if (best >= 0) return best;
    return any_positive ? -1 : -2;
  }

  // Alternative entering choice when the preferred column stalls. On success
  // rewrites (enter, col, leave) and returns true; sets leave to -2 when an
  // unbounded column is found.
  bool retry_entering(const Eigen::VectorXd& reduced, int& enter,
                      Eigen::VectorXd& col, int& leave) {
    std::vector<int> cands;
    for (int j = 0; j < d_; ++j)
      if (!in_basis_[j] && reduced[j] < -kPivotTol && j != enter)
        cands.push_back(j);
    std::sort(cands.begin(), cands.end(),
              [&](int a, int b) { return reduced[a] < reduced[b]; });
    for (int j : cands) {
      Eigen::VectorXd cj = binv_ * lp_.A.col(j);
      int row = pick_leaving(cj, false);
      if (row >= 0) {
        enter = j;
        col = std::move(cj);
        leave = row;
        return true;
      }
      if (row == -2) {
        leave = -2;
        return false;
      }
    }
    return false;
  }

  void pivot(int enter, int leave, const Eigen::VectorXd& col) {
    const double piv = col[leave];
    Eigen::VectorXd scaled = col / piv;
    scaled[leave] = 1.0 - 1.0 / piv;  // uniform rank-1 update below
    const Eigen::RowVectorXd leave_row = binv_.row(leave);
    const double leave_val = xb_[leave];
    binv_.noalias() -= scaled * leave_row;
    xb_.noalias() -= scaled * leave_val;
    if (basis_[leave] < d_) in_basis_[basis_[leave]] = false;
    basis_[leave] = enter;
    in_basis_[enter] = true;
  }

  const StandardFormLp& lp_;
  int k_, d_;
  std::vector<double> art_sign_;
  std::vector<int> basis_;
  std::vector<bool> in_basis_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  int pivots_since_refactor_ = 0;
};

}  // namespace detail

// Two-phase primal simplex: Dantzig pricing with Bland's rule after 50
// consecutive degenerate pivots; the basis inverse is refactorized
// periodically and before the outcome is extracted.
inline LpOutcome solve(const StandardFormLp& lp) {
  lp.validate();
  const int k = lp.rows(), d = lp.cols();

  detail::SimplexWork work(lp);
  Eigen::VectorXd zero_cost = Eigen::VectorXd::Zero(d);

  // Phase 1 minimizes the artificial sum; it is bounded below by zero.
  work.iterate(zero_cost, 1.0);
  const double infeas = work.phase_objective(zero_cost, 1.0);
  LpOutcome out;
  if (infeas > kFeasTol * (1.0 + lp.rhs.lpNorm<1>())) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  bool pivoted = false;
  for (int r = 0; r < k; ++r) {
    if (work.basis()[r] < d) continue;
    if (!work.force_out_artificial(r))
      throw NumericalFailure("simplex: linearly dependent row " +
                             std::to_string(r));
    pivoted = true;
  }
  if (pivoted) work.refactorize();

  LpStatus s2 = work.iterate(lp.cost, 0.0);
  out.status = s2;
  if (s2 != LpStatus::Optimal) return out;

  work.refactorize();
  out.basis = work.basis();
  out.binv = work.binv();
  out.x = Eigen::VectorXd::Zero(d);
  for (int r = 0; r < k; ++r) out.x[out.basis[r]] = work.xb()[r];
  out.objective = lp.cost.dot(out.x);
  return out;
}

// Row basic_pos of the optimal tableau: (B^-1 rhs)_i and row i of B^-1 A.
inline std::pair<double, Eigen::VectorXd> tableau_row(const LpOutcome& out,
                                                      const StandardFormLp& lp,
                                                      int basic_pos) {
  if (out.status != LpStatus::Optimal)
    throw NotOptimal("tableau_row: outcome is not optimal");
  if (basic_pos < 0 || basic_pos >= lp.rows())
    throw RowOutOfRange("tableau_row: basic position out of range");
  Eigen::RowVectorXd row = out.binv.row(basic_pos);
  return {row.dot(lp.rhs), (row * lp.A).transpose()};
}

// Appends each cut as a row (terms - t = 1 with a fresh surplus column) and
// solves the augmented LP from scratch.
inline LpOutcome resolve_with_cuts(const StandardFormLp& lp,
                                   const std::vector<StructuralCut>& cuts) {
  const int k = lp.rows(), d = lp.cols(), m = static_cast<int>(cuts.size());
  if (m == 0) return solve(lp);
  StandardFormLp aug;
  aug.A = Eigen::MatrixXd::Zero(k + m, d + m);
  aug.A.topLeftCorner(k, d) = lp.A;
  aug.rhs.resize(k + m);
  aug.rhs.head(k) = lp.rhs;
  aug.cost = Eigen::VectorXd::Zero(d + m);
  aug.cost.head(d) = lp.cost;
  for (int i = 0; i < m; ++i) {
    for (const auto& [j, c] : cuts[i].terms) {
      if (j < 0 || j >= d)
        throw ColumnOutOfRange("resolve_with_cuts: cut references column " +
                               std::to_string(j));
      aug.A(k + i, j) += c;
    }
    aug.A(k + i, d + i) = -1.0;
    aug.rhs[k + i] = 1.0;
  }
  return solve(aug);
}

}  // namespace crosscut
