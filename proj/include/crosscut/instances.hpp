#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crosscut/errors.hpp"
#include "crosscut/numeric.hpp"
#include "crosscut/rng.hpp"
#include "crosscut/simplex.hpp"

namespace crosscut {

// Standard-form mixed-integer program min cost.x, A x = rhs, x >= 0, with
// integrality on the masked columns.
struct MipInstance {
  std::string name;
  int k = 0;
  int d = 0;
  Eigen::MatrixXd A;
  Eigen::VectorXd rhs;
  Eigen::VectorXd cost;
  std::vector<std::uint8_t> integer_mask;
  std::map<std::string, std::string> metadata;

  StandardFormLp to_lp() const {
    StandardFormLp lp;
    lp.A = A;
    lp.rhs = rhs;
    lp.cost = cost;
    return lp;
  }
};

enum class DataKind { Integer, Rational };
enum class MixKind { Pure, Mixed };
enum class GraphMode { StableSet, VertexCover };
enum class InstanceFormat { Json, FreeMps };

namespace detail {

inline double draw_entry(Rng& rng, DataKind data) {
  if (data == DataKind::Integer)
    return static_cast<double>(rng.uniform_int(-10, 10));
  return std::nearbyint(rng.uniform(-10.0, 10.0) * 1e8) / 1e8;
}

}  // namespace detail

// Random dense instance: size (10i, 25i), every entry of A, rhs and cost
// uniform on [-10, 10] (integers, or rationals kept to 8 decimal places);
// mixed instances mark each variable integer with probability 1/2.
inline MipInstance gen_random_dense(int i_scale, DataKind data, MixKind mix,
                                    std::uint64_t seed) {
  MipInstance inst;
  inst.k = 10 * i_scale;
  inst.d = 25 * i_scale;
  Rng rng(seed);
  inst.A.resize(inst.k, inst.d);
  for (int r = 0; r < inst.k; ++r)
    for (int c = 0; c < inst.d; ++c) inst.A(r, c) = detail::draw_entry(rng, data);
  inst.rhs.resize(inst.k);
  for (int r = 0; r < inst.k; ++r) inst.rhs[r] = detail::draw_entry(rng, data);
  inst.cost.resize(inst.d);
  for (int c = 0; c < inst.d; ++c) inst.cost[c] = detail::draw_entry(rng, data);
  inst.integer_mask.resize(inst.d);
  for (int c = 0; c < inst.d; ++c)
    inst.integer_mask[c] = mix == MixKind::Pure ? 1 : (rng.coin() ? 1 : 0);

  inst.name = std::string("dense_") +
              (data == DataKind::Integer ? "int" : "rat") + "_" +
              (mix == MixKind::Pure ? "pure" : "mixed") + "_s" +
              std::to_string(i_scale) + "_" + std::to_string(seed);
  inst.metadata["family"] = "dense";
  inst.metadata["scale"] = std::to_string(i_scale);
  inst.metadata["data"] = data == DataKind::Integer ? "integer" : "rational";
  inst.metadata["mix"] = mix == MixKind::Pure ? "pure" : "mixed";
  inst.metadata["seed"] = std::to_string(seed);
  return inst;
}

// Same, but instances whose LP relaxation is infeasible or unbounded are
// discarded and regenerated from derived sub-seeds.
inline MipInstance gen_random_dense_feasible(int i_scale, DataKind data,
                                             MixKind mix, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    MipInstance inst = gen_random_dense(
        i_scale, data, mix, attempt == 0 ? seed : derive_seed(seed, attempt));
    LpOutcome out = solve(inst.to_lp());
    if (out.status == LpStatus::Optimal) {
      inst.metadata["attempts"] = std::to_string(attempt + 1);
      return inst;
    }
    if (attempt > 500)
      throw NumericalFailure("gen_random_dense_feasible: no feasible draw");
  }
}

// G(nv, p) stable-set or vertex-cover model in standard form: one row per
// edge (slack for <=, surplus for >=) and an explicit x_v <= 1 row per
// vertex. Stable set minimizes the negated vertex sum.
inline MipInstance gen_graph_instance(int nv, double p, GraphMode mode,
                                      std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < nv; ++u)
    for (int v = u + 1; v < nv; ++v)
      if (rng.uniform01() < p) edges.emplace_back(u, v);

  const int ne = static_cast<int>(edges.size());
  MipInstance inst;
  inst.k = ne + nv;
  inst.d = nv + ne + nv;  // vertex vars, edge slacks, bound slacks
  inst.A = Eigen::MatrixXd::Zero(inst.k, inst.d);
  inst.rhs = Eigen::VectorXd::Ones(inst.k);
  inst.cost = Eigen::VectorXd::Zero(inst.d);
  inst.integer_mask.assign(inst.d, 0);
  const double edge_slack_sign = mode == GraphMode::StableSet ? 1.0 : -1.0;
  for (int e = 0; e < ne; ++e) {
    inst.A(e, edges[e].first) = 1.0;
    inst.A(e, edges[e].second) = 1.0;
    inst.A(e, nv + e) = edge_slack_sign;
  }
  for (int v = 0; v < nv; ++v) {
    inst.A(ne + v, v) = 1.0;
    inst.A(ne + v, nv + ne + v) = 1.0;
    inst.integer_mask[v] = 1;
    inst.cost[v] = mode == GraphMode::StableSet ? -1.0 : 1.0;
  }

  inst.name = std::string(mode == GraphMode::StableSet ? "stable" : "cover") +
              "_n" + std::to_string(nv) + "_" + std::to_string(seed);
  inst.metadata["family"] =
      mode == GraphMode::StableSet ? "stable_set" : "vertex_cover";
  inst.metadata["nv"] = std::to_string(nv);
  inst.metadata["p"] = g17(p);
  inst.metadata["edges"] = std::to_string(ne);
  inst.metadata["seed"] = std::to_string(seed);
  return inst;
}

// ---------------------------------------------------------------------------
// Serialization. Writers are hand-rolled so the byte stream is deterministic:
// fixed key order, 17 significant digits.

inline std::string write_instance_json(const MipInstance& inst) {
  std::ostringstream os;
  auto arr = [&os](const auto& get, long count) {
    os << "[";
    for (long i = 0; i < count; ++i) os << (i ? "," : "") << get(i);
    os << "]";
  };
  os << "{\"name\":" << nlohmann::json(inst.name).dump() << ",";
  os << "\"k\":" << inst.k << ",\"d\":" << inst.d << ",";
  os << "\"A\":";
  arr([&](long i) { return g17(inst.A(i / inst.d, i % inst.d)); },
      static_cast<long>(inst.k) * inst.d);
  os << ",\"rhs\":";
  arr([&](long i) { return g17(inst.rhs[i]); }, inst.k);
  os << ",\"cost\":";
  arr([&](long i) { return g17(inst.cost[i]); }, inst.d);
  os << ",\"integer_mask\":";
  arr([&](long i) { return inst.integer_mask[i] ? "true" : "false"; }, inst.d);
  os << ",\"metadata\":{";
  bool first = true;
  for (const auto& [key, val] : inst.metadata) {
    if (!first) os << ",";
    first = false;
    os << nlohmann::json(key).dump() << ":" << nlohmann::json(val).dump();
  }
  os << "}}\n";
  return os.str();
}

inline MipInstance parse_instance_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
  try {
    MipInstance inst;
    inst.name = j.value("name", "");
    inst.k = j.at("k").get<int>();
    inst.d = j.at("d").get<int>();
    const auto& a = j.at("A");
    if (static_cast<long>(a.size()) != static_cast<long>(inst.k) * inst.d)
      throw ParseError("json: A has wrong length");
    inst.A.resize(inst.k, inst.d);
    for (int r = 0; r < inst.k; ++r)
      for (int c = 0; c < inst.d; ++c)
        inst.A(r, c) = a[static_cast<std::size_t>(r) * inst.d + c].get<double>();
    const auto& rhs = j.at("rhs");
    const auto& cost = j.at("cost");
    const auto& mask = j.at("integer_mask");
    if (static_cast<int>(rhs.size()) != inst.k ||
        static_cast<int>(cost.size()) != inst.d ||
        static_cast<int>(mask.size()) != inst.d)
      throw ParseError("json: rhs/cost/integer_mask length mismatch");
    inst.rhs.resize(inst.k);
    inst.cost.resize(inst.d);
    inst.integer_mask.resize(inst.d);
    for (int r = 0; r < inst.k; ++r) inst.rhs[r] = rhs[r].get<double>();
    for (int c = 0; c < inst.d; ++c) inst.cost[c] = cost[c].get<double>();
    for (int c = 0; c < inst.d; ++c) inst.integer_mask[c] = mask[c].get<bool>();
    if (j.contains("metadata"))
      for (const auto& [key, val] : j.at("metadata").items())
        inst.metadata[key] = val.get<std::string>();
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
}

namespace detail {

struct MpsBuild {
  // Working model read from the file, before conversion to standard form.
  std::vector<std::string> col_names;
  std::map<std::string, int> col_index;
  std::vector<std::uint8_t> col_integer;
  std::vector<char> row_sense;  // E, L, G
  std::vector<std::string> row_names;
  std::map<std::string, int> row_index;
  std::string obj_name;
  std::vector<std::map<int, double>> col_entries;  // per column: row -> coef
  std::vector<double> obj_coef;
  std::map<int, double> rhs;
  double obj_rhs = 0.0;
  // bounds
  std::vector<double> upper, lower;
  std::vector<std::uint8_t> upper_set, lower_forced;
};

inline std::vector<std::string> mps_fields(const std::string& line) {
  std::vector<std::string> f;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) f.push_back(tok);
  return f;
}

}  // namespace detail

// Free-format MPS subset: NAME, ROWS, COLUMNS with INTORG/INTEND markers,
// RHS, BOUNDS; RANGES, maximization and free variables are rejected.
// Inequality rows gain a slack or surplus column and finite bounds become
// rows, so the result is in standard form.
inline MipInstance parse_instance_free_mps(const std::string& text) {
  detail::MpsBuild m;
  std::istringstream stream(text);
  std::string line, section;
  long lineno = 0;
  bool in_integer = false;
  std::string problem_name = "mps";

  while (std::getline(stream, line)) {
    ++lineno;
    if (line.empty() || line[0] == '*') continue;
    auto fields = detail::mps_fields(line);
    if (fields.empty()) continue;

    const bool indented = line[0] == ' ' || line[0] == '\t';
    if (!indented) {
      std::string head = fields[0];
      if (head == "NAME") {
        if (fields.size() > 1) problem_name = fields[1];
        continue;
      }
      if (head == "OBJSENSE") { section = "OBJSENSE"; continue; }
      if (head == "ROWS" || head == "COLUMNS" || head == "RHS" ||
          head == "BOUNDS" || head == "ENDATA") {
        section = head;
        if (head == "ENDATA") break;
        continue;
      }
      if (head == "RANGES")
        throw UnsupportedFeature("mps: RANGES section not supported");
      if (head == "SOS")
        throw UnsupportedFeature("mps: SOS section not supported");
      throw ParseError("mps: unknown section '" + head + "'", lineno);
    }

    if (section == "OBJSENSE") {
      std::string s = fields[0];
      if (s == "MAX" || s == "MAXIMIZE")
        throw UnsupportedFeature("mps: maximization not supported");
      continue;
    }
    if (section == "ROWS") {
      if (fields.size() < 2) throw ParseError("mps: bad ROWS line", lineno);
      char sense = std::toupper(fields[0][0]);
      const std::string& name = fields[1];
      if (sense == 'N') {
        if (m.obj_name.empty()) m.obj_name = name;
        continue;  // extra free rows are ignored
      }
      if (sense != 'E' && sense != 'L' && sense != 'G')
        throw ParseError("mps: unknown row sense", lineno);
      m.row_index[name] = static_cast<int>(m.row_names.size());
      m.row_names.push_back(name);
      m.row_sense.push_back(sense);
      continue;
    }
    if (section == "COLUMNS") {
      if (fields.size() >= 3 && fields[1] == "'MARKER'") {
        if (fields[2] == "'INTORG'") in_integer = true;
        else if (fields[2] == "'INTEND'") in_integer = false;
        else throw ParseError("mps: unknown marker", lineno);
        continue;
      }
      if (fields.size() < 3 || fields.size() % 2 == 0)
        throw ParseError("mps: bad COLUMNS line", lineno);
      const std::string& cname = fields[0];
      int c;
      if (auto it = m.col_index.find(cname); it != m.col_index.end()) {
        c = it->second;
      } else {
        c = static_cast<int>(m.col_names.size());
        m.col_index[cname] = c;
        m.col_names.push_back(cname);
        m.col_integer.push_back(in_integer ? 1 : 0);
        m.col_entries.emplace_back();
        m.obj_coef.push_back(0.0);
      }
      for (std::size_t i = 1; i + 1 < fields.size(); i += 2) {
        const std::string& rname = fields[i];
        double val;
        try {
          val = std::stod(fields[i + 1]);
        } catch (...) {
          throw ParseError("mps: bad numeric value", lineno);
        }
        if (rname == m.obj_name) {
          m.obj_coef[c] += val;
        } else if (auto rit = m.row_index.find(rname); rit != m.row_index.end()) {
          m.col_entries[c][rit->second] += val;
        } else {
          throw ParseError("mps: unknown row '" + rname + "'", lineno);
        }
      }
      continue;
    }
    if (section == "RHS") {
      if (fields.size() < 3 || fields.size() % 2 == 0)
        throw ParseError("mps: bad RHS line", lineno);
      for (std::size_t i = 1; i + 1 < fields.size(); i += 2) {
        double val;
        try {
          val = std::stod(fields[i + 1]);
        } catch (...) {
          throw ParseError("mps: bad numeric value", lineno);
        }
        if (fields[i] == m.obj_name) {
          m.obj_rhs = val;
        } else if (auto rit = m.row_index.find(fields[i]); rit != m.row_index.end()) {
          m.rhs[rit->second] = val;
        } else {
          throw ParseError("mps: unknown row '" + fields[i] + "'", lineno);
        }
      }
      continue;
    }
    if (section == "BOUNDS") {
      if (fields.size() < 3) throw ParseError("mps: bad BOUNDS line", lineno);
      const std::string& kind = fields[0];
      const std::string& cname = fields[2];
      auto it = m.col_index.find(cname);
      if (it == m.col_index.end())
        throw ParseError("mps: bound on unknown column", lineno);
      const int c = it->second;
      if (m.upper.empty()) {
        m.upper.assign(m.col_names.size(), 0.0);
        m.upper_set.assign(m.col_names.size(), 0);
        m.lower.assign(m.col_names.size(), 0.0);
        m.lower_forced.assign(m.col_names.size(), 0);
      }
      double val = 0.0;
      if (fields.size() >= 4) {
        try {
          val = std::stod(fields[3]);
        } catch (...) {
          throw ParseError("mps: bad bound value", lineno);
        }
      }
      if (kind == "UP" || kind == "UI") {
        if (val < 0.0)
          throw UnsupportedFeature("mps: negative upper bound");
        m.upper[c] = val;
        m.upper_set[c] = 1;
        if (kind == "UI") m.col_integer[c] = 1;
      } else if (kind == "LO" || kind == "LI") {
        if (val < 0.0)
          throw UnsupportedFeature("mps: negative lower bound");
        if (val > 0.0) {
          m.lower[c] = val;
          m.lower_forced[c] = 1;
        }
        if (kind == "LI") m.col_integer[c] = 1;
      } else if (kind == "FX") {
        m.upper[c] = val;
        m.upper_set[c] = 1;
        m.lower[c] = val;
        m.lower_forced[c] = 1;
        if (val < 0.0) throw UnsupportedFeature("mps: negative fixed value");
      } else if (kind == "BV") {
        m.col_integer[c] = 1;
        m.upper[c] = 1.0;
        m.upper_set[c] = 1;
      } else if (kind == "PL") {
        // default upper bound, nothing to do
      } else if (kind == "FR" || kind == "MI") {
        throw UnsupportedFeature("mps: free variables not supported");
      } else {
        throw ParseError("mps: unknown bound kind '" + kind + "'", lineno);
      }
      continue;
    }
    throw ParseError("mps: data before any section", lineno);
  }

  if (m.upper.empty()) {
    m.upper.assign(m.col_names.size(), 0.0);
    m.upper_set.assign(m.col_names.size(), 0);
    m.lower.assign(m.col_names.size(), 0.0);
    m.lower_forced.assign(m.col_names.size(), 0);
  }

  // Assemble standard form: structural columns, then one slack or surplus per
  // inequality row, then one slack per finite bound row.
  const int nc = static_cast<int>(m.col_names.size());
  const int nr = static_cast<int>(m.row_names.size());
  int extra_cols = 0, extra_rows = 0;
  for (char s : m.row_sense)
    if (s != 'E') ++extra_cols;
  for (int c = 0; c < nc; ++c) {
    if (m.upper_set[c]) { ++extra_rows; ++extra_cols; }
    if (m.lower_forced[c]) { ++extra_rows; ++extra_cols; }
  }

  MipInstance inst;
  inst.name = problem_name;
  inst.k = nr + extra_rows;
  inst.d = nc + extra_cols;
  inst.A = Eigen::MatrixXd::Zero(inst.k, inst.d);
  inst.rhs = Eigen::VectorXd::Zero(inst.k);
  inst.cost = Eigen::VectorXd::Zero(inst.d);
  inst.integer_mask.assign(inst.d, 0);

  for (int c = 0; c < nc; ++c) {
    inst.cost[c] = m.obj_coef[c];
    inst.integer_mask[c] = m.col_integer[c];
    for (const auto& [r, v] : m.col_entries[c]) inst.A(r, c) = v;
  }
  for (const auto& [r, v] : m.rhs) inst.rhs[r] = v;

  int next_col = nc, next_row = nr;
  for (int r = 0; r < nr; ++r) {
    if (m.row_sense[r] == 'L') inst.A(r, next_col++) = 1.0;
    else if (m.row_sense[r] == 'G') inst.A(r, next_col++) = -1.0;
  }
  for (int c = 0; c < nc; ++c) {
    if (m.upper_set[c]) {
      inst.A(next_row, c) = 1.0;
      inst.A(next_row, next_col++) = 1.0;
      inst.rhs[next_row] = m.upper[c];
      ++next_row;
    }
    if (m.lower_forced[c]) {
      inst.A(next_row, c) = 1.0;
      inst.A(next_row, next_col++) = -1.0;
      inst.rhs[next_row] = m.lower[c];
      ++next_row;
    }
  }
  inst.metadata["family"] = "mps";
  inst.metadata["objective_offset"] = g17(-m.obj_rhs);
  return inst;
}

inline std::string write_instance_free_mps(const MipInstance& inst) {
  std::ostringstream os;
  os << "NAME " << (inst.name.empty() ? "crosscut" : inst.name) << "\n";
  os << "ROWS\n N COST\n";
  for (int r = 0; r < inst.k; ++r) os << " E R" << r << "\n";
  os << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (int c = 0; c < inst.d; ++c) {
    const bool want_int = inst.integer_mask[c] != 0;
    if (want_int != in_int) {
      os << " MK" << marker++ << " 'MARKER' "
         << (want_int ? "'INTORG'" : "'INTEND'") << "\n";
      in_int = want_int;
    }
    if (inst.cost[c] != 0.0)
      os << " C" << c << " COST " << g17(inst.cost[c]) << "\n";
    for (int r = 0; r < inst.k; ++r)
      if (inst.A(r, c) != 0.0)
        os << " C" << c << " R" << r << " " << g17(inst.A(r, c)) << "\n";
  }
  if (in_int) os << " MK" << marker++ << " 'MARKER' 'INTEND'\n";
  os << "RHS\n";
  for (int r = 0; r < inst.k; ++r)
    if (inst.rhs[r] != 0.0) os << " B R" << r << " " << g17(inst.rhs[r]) << "\n";
  os << "ENDATA\n";
  return os.str();
}

inline MipInstance parse_instance(const std::string& text, InstanceFormat fmt) {
  return fmt == InstanceFormat::Json ? parse_instance_json(text)
                                     : parse_instance_free_mps(text);
}

inline std::string write_instance(const MipInstance& inst, InstanceFormat fmt) {
  return fmt == InstanceFormat::Json ? write_instance_json(inst)
                                     : write_instance_free_mps(inst);
}

}  // namespace crosscut
