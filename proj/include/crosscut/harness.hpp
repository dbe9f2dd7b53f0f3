#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "crosscut/corner.hpp"
#include "crosscut/errors.hpp"
#include "crosscut/instances.hpp"
#include "crosscut/lifting.hpp"
#include "crosscut/numeric.hpp"
#include "crosscut/reference.hpp"
#include "crosscut/rng.hpp"
#include "crosscut/simplex.hpp"

namespace crosscut {

struct RunConfig {
  int rows_per_cut = 2;   // N
  int cuts_per_round = 5; // k
  int rounds = 5;         // ell
  int q = 1;              // fractional rows per GX-cut
  std::uint64_t seed = 1;
  long node_limit = 2000;
  bool collect_cuts = false;

  void validate() const {
    if (rows_per_cut < 1 || cuts_per_round < 1 || rounds < 1)
      throw Error("RunConfig: N, k and ell must be at least 1");
    if (q < 1 || q > rows_per_cut)
      throw Error("RunConfig: q must satisfy 1 <= q <= N");
  }
};

inline double beta_metric(double lp, double gmi, double best) {
  const double denom = gmi - lp;
  if (denom < 1e-9) return 0.0;
  return (best - gmi) / denom;
}

struct RunReport {
  std::string instance;
  std::uint64_t seed = 0;
  int N = 0, k = 0, ell = 0, q = 0;
  double lp = 0.0, gmi = 0.0;
  double x = std::numeric_limits<double>::quiet_NaN();
  double xg = std::numeric_limits<double>::quiet_NaN();
  double gx = std::numeric_limits<double>::quiet_NaN();
  double gxg = std::numeric_limits<double>::quiet_NaN();
  double best = 0.0;
  double beta = 0.0;
  double gap_gmi = std::numeric_limits<double>::quiet_NaN();
  double gap_best = std::numeric_limits<double>::quiet_NaN();
  int gmi_cuts = 0;
  int family_cuts = 0;
  bool lp_integral = false;
  bool x_skipped = false;
  bool gx_skipped = false;
  double max_root_activity = 0.0;  // largest structural-cut value at the root optimum
  double time_ms = 0.0;
  std::vector<StructuralCut> cuts;  // populated when cfg.collect_cuts
};

namespace detail {

struct RowPools {
  std::vector<int> fractional;  // integer basic, fractional value
  std::vector<int> integral;    // integer basic, integral value
};

inline RowPools classify_rows(const LpOutcome& out, const MipInstance& inst) {
  RowPools pools;
  for (int r = 0; r < static_cast<int>(out.basis.size()); ++r) {
    const int col = out.basis[r];
    if (col >= inst.d || !inst.integer_mask[col]) continue;
    if (int_dist(out.x[col]) >= kIntTol)
      pools.fractional.push_back(r);
    else
      pools.integral.push_back(r);
  }
  return pools;
}

inline std::vector<int> pick(const std::vector<int>& pool, int count, Rng& rng) {
  std::vector<int> idx = rng.sample_without_replacement(
      static_cast<int>(pool.size()), count);
  std::vector<int> rows(count);
  for (int i = 0; i < count; ++i) rows[i] = pool[idx[i]];
  return rows;
}

inline Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
}

// One X-cut: simplex-uniform weights over N fractional rows.
inline StructuralCut sample_xcut(const LpOutcome& out, const StandardFormLp& lp,
                                 const MipInstance& inst, const RowPools& pools,
                                 int N, Rng& rng) {
  std::vector<int> rows = pick(pools.fractional, N, rng);
  CornerSystem cs = build_corner(out, lp, rows, inst.integer_mask);
  Eigen::VectorXd nu = to_eigen(rng.simplex(N));
  return to_structural(generate_xcut(cs, nu), cs, lp.cols());
}

// One GX-cut: q fractional and N-q integral rows, random weights and center.
// When the integral pool is short the remainder comes from unused fractional
// rows, which only strengthens the fractional-row count.
inline StructuralCut sample_gxcut(const LpOutcome& out, const StandardFormLp& lp,
                                  const MipInstance& inst, const RowPools& pools,
                                  int N, int q, Rng& rng) {
  std::vector<int> rows = pick(pools.fractional, q, rng);
  const int want_int = N - q;
  const int have_int = std::min<int>(want_int, pools.integral.size());
  for (int r : pick(pools.integral, have_int, rng)) rows.push_back(r);
  if (static_cast<int>(rows.size()) < N) {
    std::vector<int> rest;
    for (int r : pools.fractional)
      if (std::find(rows.begin(), rows.end(), r) == rows.end()) rest.push_back(r);
    for (int r : pick(rest, N - static_cast<int>(rows.size()), rng))
      rows.push_back(r);
  }
  CornerSystem cs = build_corner(out, lp, rows, inst.integer_mask);
  Eigen::VectorXd nu = to_eigen(rng.simplex(N));
  Eigen::VectorXd f(N);
  for (int i = 0; i < N; ++i) f[i] = rng.uniform(0.001, 0.999);
  return to_structural(generate_gxcut(cs, nu, f), cs, lp.cols());
}

inline std::vector<StructuralCut> concat(const std::vector<StructuralCut>& a,
                                         const std::vector<StructuralCut>& b) {
  std::vector<StructuralCut> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return all;
}

}  // namespace detail

// The per-instance testing procedure: GMI cuts from every fractional
// integer-basic row of the optimal tableau, then `rounds` independent rounds
// of k X-cuts and k GX-cuts, per-round objectives for the four variants,
// per-variant maxima, Best and the beta improvement metric.
inline RunReport run_algorithm2(const MipInstance& inst, const RunConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const StandardFormLp lp = inst.to_lp();
  LpOutcome root = solve(lp);
  if (root.status != LpStatus::Optimal)
    throw NotOptimal("run_algorithm2: LP relaxation is not optimal");

  RunReport rep;
  rep.instance = inst.name;
  rep.seed = cfg.seed;
  rep.N = cfg.rows_per_cut;
  rep.k = cfg.cuts_per_round;
  rep.ell = cfg.rounds;
  rep.q = cfg.q;
  rep.lp = root.objective;

  detail::RowPools pools = detail::classify_rows(root, inst);
  const int total_int_rows =
      static_cast<int>(pools.fractional.size() + pools.integral.size());

  auto record_cut = [&](const StructuralCut& sc) {
    rep.max_root_activity = std::max(rep.max_root_activity, sc.value_at(root.x));
    if (cfg.collect_cuts) rep.cuts.push_back(sc);
  };

  std::vector<StructuralCut> gmi_cuts;
  for (int r : pools.fractional) {
    CornerSystem cs = build_corner(root, lp, {r}, inst.integer_mask);
    StructuralCut sc = to_structural(gmi_cut(cs), cs, lp.cols());
    record_cut(sc);
    gmi_cuts.push_back(std::move(sc));
  }
  rep.gmi_cuts = static_cast<int>(gmi_cuts.size());
  rep.gmi = gmi_cuts.empty() ? rep.lp : resolve_with_cuts(lp, gmi_cuts).objective;

  if (pools.fractional.empty()) {
    rep.lp_integral = true;
    rep.x_skipped = rep.gx_skipped = true;
    rep.best = rep.gmi;
    rep.beta = 0.0;
    rep.time_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
  }

  const bool can_x = static_cast<int>(pools.fractional.size()) >= cfg.rows_per_cut;
  const bool can_gx = static_cast<int>(pools.fractional.size()) >= cfg.q &&
                      total_int_rows >= cfg.rows_per_cut;
  rep.x_skipped = !can_x;
  rep.gx_skipped = !can_gx;

  Rng rng(cfg.seed);
  const double neg_inf = -std::numeric_limits<double>::infinity();
  double bx = neg_inf, bxg = neg_inf, bgx = neg_inf, bgxg = neg_inf;
  for (int round = 0; round < cfg.rounds; ++round) {
    std::vector<StructuralCut> xcuts, gxcuts;
    for (int j = 0; j < cfg.cuts_per_round; ++j) {
      if (can_x) {
        xcuts.push_back(detail::sample_xcut(root, lp, inst, pools,
                                            cfg.rows_per_cut, rng));
        record_cut(xcuts.back());
      }
      if (can_gx) {
        gxcuts.push_back(detail::sample_gxcut(root, lp, inst, pools,
                                              cfg.rows_per_cut, cfg.q, rng));
        record_cut(gxcuts.back());
      }
    }
    rep.family_cuts += static_cast<int>(xcuts.size() + gxcuts.size());
    if (can_x) {
      bx = std::max(bx, resolve_with_cuts(lp, xcuts).objective);
      bxg = std::max(bxg,
                     resolve_with_cuts(lp, detail::concat(xcuts, gmi_cuts))
                         .objective);
    }
    if (can_gx) {
      bgx = std::max(bgx, resolve_with_cuts(lp, gxcuts).objective);
      bgxg = std::max(bgxg,
                      resolve_with_cuts(lp, detail::concat(gxcuts, gmi_cuts))
                          .objective);
    }
  }
  if (can_x) {
    rep.x = bx;
    rep.xg = bxg;
  }
  if (can_gx) {
    rep.gx = bgx;
    rep.gxg = bgxg;
  }
  rep.best = rep.gmi;
  for (double v : {rep.x, rep.xg, rep.gx, rep.gxg})
    if (!std::isnan(v)) rep.best = std::max(rep.best, v);
  rep.beta = beta_metric(rep.lp, rep.gmi, rep.best);
  rep.time_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

struct ClosureReport {
  std::string instance;
  std::uint64_t seed = 0;
  double lp = 0.0;
  double ip = std::numeric_limits<double>::quiet_NaN();
  bool ip_known = false;
  double gmi_objective = 0.0;
  double family_objective = 0.0;
  double gap_gmi = std::numeric_limits<double>::quiet_NaN();
  double gap_family = std::numeric_limits<double>::quiet_NaN();
  int gmi_cuts = 0;
  int family_cuts = 0;
  double time_ms = 0.0;
};

// Approximate-closure experiment: one shot of GMI cuts plus num_cuts random
// X/GX cuts (half each), gap closed measured against the branch-and-bound
// optimum when the node limit allows it.
inline ClosureReport run_closure(const MipInstance& inst, int num_cuts,
                                 const RunConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const StandardFormLp lp = inst.to_lp();
  LpOutcome root = solve(lp);
  if (root.status != LpStatus::Optimal)
    throw NotOptimal("run_closure: LP relaxation is not optimal");

  ClosureReport rep;
  rep.instance = inst.name;
  rep.seed = cfg.seed;
  rep.lp = root.objective;

  detail::RowPools pools = detail::classify_rows(root, inst);
  std::vector<StructuralCut> gmi_cuts;
  for (int r : pools.fractional) {
    CornerSystem cs = build_corner(root, lp, {r}, inst.integer_mask);
    gmi_cuts.push_back(to_structural(gmi_cut(cs), cs, lp.cols()));
  }
  rep.gmi_cuts = static_cast<int>(gmi_cuts.size());

  Rng rng(cfg.seed);
  std::vector<StructuralCut> family = gmi_cuts;
  const bool can_x =
      static_cast<int>(pools.fractional.size()) >= cfg.rows_per_cut;
  const bool can_gx =
      static_cast<int>(pools.fractional.size()) >= cfg.q &&
      static_cast<int>(pools.fractional.size() + pools.integral.size()) >=
          cfg.rows_per_cut;
  if (!pools.fractional.empty()) {
    for (int i = 0; i < num_cuts; ++i) {
      const bool make_x = i < num_cuts / 2 ? can_x : !can_gx && can_x;
      if (make_x)
        family.push_back(detail::sample_xcut(root, lp, inst, pools,
                                             cfg.rows_per_cut, rng));
      else if (can_gx)
        family.push_back(detail::sample_gxcut(root, lp, inst, pools,
                                              cfg.rows_per_cut, cfg.q, rng));
    }
  }
  rep.family_cuts = static_cast<int>(family.size()) - rep.gmi_cuts;

  rep.gmi_objective =
      gmi_cuts.empty() ? rep.lp : resolve_with_cuts(lp, gmi_cuts).objective;
  rep.family_objective =
      family.empty() ? rep.lp : resolve_with_cuts(lp, family).objective;

  IpOutcome ip = branch_and_bound(inst, cfg.node_limit);
  if (ip.status == IpStatus::Optimal) {
    rep.ip_known = true;
    rep.ip = ip.objective;
    const double denom = rep.ip - rep.lp;
    if (denom < 1e-9) {
      rep.gap_gmi = rep.gap_family = 1.0;
    } else {
      rep.gap_gmi = (rep.gmi_objective - rep.lp) / denom;
      rep.gap_family = (rep.family_objective - rep.lp) / denom;
    }
  }
  rep.time_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

struct BadLiftRow {
  long i = 0;
  double lift_at_p = 0.0;    // trivial lifting at p = (0.5, 0)
  double pi_min_bound = 0.0; // truncated lower bound on any lifting at p
  double ratio = 0.0;        // lift_at_p / pi_min_bound
  double delta = 0.0;        // 1 - min_N lift(b - N p)
};

// Demonstration that the trivial lifting can be arbitrarily worse than the
// best possible lifting on the thin-triangle family.
inline std::vector<BadLiftRow> run_badlift(const std::vector<long>& i_values,
                                           int n_max) {
  Eigen::Vector2d b(-0.5, -0.5), p(0.5, 0.0);
  const int radius = n_max / 2 + 3;
  std::vector<BadLiftRow> rows;
  for (long i : i_values) {
    FacetNormals fn = make_badlift_triangle(i);
    BadLiftRow row;
    row.i = i;
    row.lift_at_p = trivial_lift_bruteforce(fn, p, radius);
    row.pi_min_bound = pi_min_truncated(fn, b, p, n_max, radius);
    row.ratio = row.pi_min_bound > 0.0
                    ? row.lift_at_p / row.pi_min_bound
                    : std::numeric_limits<double>::infinity();
    double min_lift = 1.0;
    for (int N = 1; N <= n_max; ++N)
      min_lift = std::min(min_lift,
                          trivial_lift_bruteforce(fn, (b - N * p).eval(), radius));
    row.delta = 1.0 - min_lift;
    rows.push_back(row);
  }
  return rows;
}

// CSV rows sorted by (instance, N, seed); numbers in 17-significant-digit
// form so identical runs produce identical bytes.
inline void write_csv(std::vector<RunReport> reports, std::ostream& os) {
  std::sort(reports.begin(), reports.end(),
            [](const RunReport& a, const RunReport& b) {
              if (a.instance != b.instance) return a.instance < b.instance;
              if (a.N != b.N) return a.N < b.N;
              return a.seed < b.seed;
            });
  os << "instance,seed,N,k,ell,q,LP,GMI,X,XG,GX,GXG,Best,beta,gap_gmi,gap_best,"
        "time_ms\n";
  for (const RunReport& r : reports) {
    os << r.instance << ',' << r.seed << ',' << r.N << ',' << r.k << ','
       << r.ell << ',' << r.q << ',' << g17(r.lp) << ',' << g17(r.gmi) << ','
       << g17(r.x) << ',' << g17(r.xg) << ',' << g17(r.gx) << ',' << g17(r.gxg)
       << ',' << g17(r.best) << ',' << g17(r.beta) << ',' << g17(r.gap_gmi)
       << ',' << g17(r.gap_best) << ',' << g17(r.time_ms) << '\n';
  }
  if (!os) throw IoError("write_csv: stream failure");
}

}  // namespace crosscut
