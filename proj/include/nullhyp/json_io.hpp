/**
 * @file json_io.hpp
 * @brief JSON serialization for every domain type: self-describing objects
 *        with a "type" field, complex numbers as [re, im] pairs, matrices
 *        row-major, indices 1-based on disk and 0-based in memory.
 */
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nullhyp/charts.hpp"
#include "nullhyp/errors.hpp"
#include "nullhyp/gauge.hpp"
#include "nullhyp/higgs.hpp"
#include "nullhyp/hyperpolygon.hpp"
#include "nullhyp/involution.hpp"
#include "nullhyp/kempf_ness.hpp"
#include "nullhyp/mat2.hpp"
#include "nullhyp/minkowski.hpp"

namespace nullhyp {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Scalars and small containers
// ---------------------------------------------------------------------------

inline json to_json(cx z) { return json::array({z.real(), z.imag()}); }

inline cx complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(ErrorCode::kSchema, where + ": expected a [re, im] pair");
  }
  return cx{j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const Vec2& v) { return json::array({to_json(v.a), to_json(v.b)}); }
inline json to_json(const RowVec2& v) {
  return json::array({to_json(v.a), to_json(v.b)});
}

inline Vec2 vec2_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) {
    fail(ErrorCode::kSchema, where + ": expected a 2-vector");
  }
  return Vec2{complex_from_json(j[0], where), complex_from_json(j[1], where)};
}

inline RowVec2 rowvec2_from_json(const json& j, const std::string& where) {
  const Vec2 v = vec2_from_json(j, where);
  return RowVec2{v.a, v.b};
}

inline json to_json(const Mat2& m) {
  return json::array({json::array({to_json(m.m00), to_json(m.m01)}),
                      json::array({to_json(m.m10), to_json(m.m11)})});
}

inline Mat2 mat2_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
      !j[1].is_array() || j[1].size() != 2) {
    fail(ErrorCode::kSchema, where + ": expected a 2x2 row-major matrix");
  }
  return Mat2{complex_from_json(j[0][0], where), complex_from_json(j[0][1], where),
              complex_from_json(j[1][0], where), complex_from_json(j[1][1], where)};
}

namespace detail {

inline const json& expect_field(const json& j, const std::string& key,
                                const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    fail(ErrorCode::kSchema, where + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

inline void expect_type(const json& j, const std::string& type,
                        const std::string& where) {
  const json& t = expect_field(j, "type", where);
  if (!t.is_string() || t.get<std::string>() != type) {
    fail(ErrorCode::kSchema, where + ": expected \"type\": \"" + type + "\"");
  }
}

inline int int_from_json(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(ErrorCode::kSchema, where + ": expected an integer");
  return j.get<int>();
}

/// Read a 1-based index list into 0-based form.
inline std::vector<int> indices_from_json(const json& j, int n,
                                          const std::string& where) {
  if (!j.is_array()) fail(ErrorCode::kSchema, where + ": expected an index array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const json& e : j) {
    const int v = int_from_json(e, where);
    if (v < 1 || v > n) {
      fail(ErrorCode::kSchema, where + ": index " + std::to_string(v) +
                                   " out of range 1.." + std::to_string(n));
    }
    out.push_back(v - 1);
  }
  return out;
}

inline json indices_to_json(const std::vector<int>& v) {
  json j = json::array();
  for (int i : v) j.push_back(i + 1);
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hyperpolygon configurations and gauges
// ---------------------------------------------------------------------------

inline json to_json(const HyperpolygonPoint& x) {
  json p = json::array(), q = json::array();
  for (const auto& v : x.p) p.push_back(to_json(v));
  for (const auto& v : x.q) q.push_back(to_json(v));
  return json{{"type", "hyperpolygon"}, {"n", x.n()}, {"p", p}, {"q", q}};
}

inline HyperpolygonPoint hyperpolygon_from_json(const json& j) {
  const std::string where = "hyperpolygon";
  detail::expect_type(j, "hyperpolygon", where);
  const int n = detail::int_from_json(detail::expect_field(j, "n", where), where);
  const json& p = detail::expect_field(j, "p", where);
  const json& q = detail::expect_field(j, "q", where);
  if (!p.is_array() || !q.is_array() || static_cast<int>(p.size()) != n ||
      static_cast<int>(q.size()) != n) {
    fail(ErrorCode::kSchema, where + ": p and q must be arrays of length n");
  }
  HyperpolygonPoint x;
  x.p.reserve(n);
  x.q.reserve(n);
  for (int i = 0; i < n; ++i) {
    x.p.push_back(rowvec2_from_json(p[i], where + ".p"));
    x.q.push_back(vec2_from_json(q[i], where + ".q"));
  }
  validate_sizes(x);
  return x;
}

inline json to_json(const GaugeElement& g) {
  json e = json::array();
  for (const cx& v : g.e) e.push_back(to_json(v));
  return json{{"type", "gauge"},
              {"flavor", g.flavor == GaugeFlavor::kCompact ? "compact" : "complex"},
              {"a", to_json(g.a)},
              {"e", e}};
}

inline GaugeElement gauge_from_json(const json& j) {
  const std::string where = "gauge";
  detail::expect_type(j, "gauge", where);
  const json& fl = detail::expect_field(j, "flavor", where);
  if (!fl.is_string() ||
      (fl.get<std::string>() != "compact" && fl.get<std::string>() != "complex")) {
    fail(ErrorCode::kSchema, where + ": flavor must be \"compact\" or \"complex\"");
  }
  GaugeElement g;
  g.flavor = fl.get<std::string>() == "compact" ? GaugeFlavor::kCompact
                                                : GaugeFlavor::kComplex;
  g.a = mat2_from_json(detail::expect_field(j, "a", where), where + ".a");
  const json& e = detail::expect_field(j, "e", where);
  if (!e.is_array()) fail(ErrorCode::kSchema, where + ": e must be an array");
  g.e.reserve(e.size());
  for (const json& v : e) g.e.push_back(complex_from_json(v, where + ".e"));
  validate_gauge(g);
  return g;
}

// ---------------------------------------------------------------------------
// Higgs data, chart coordinates, polygons
// ---------------------------------------------------------------------------

inline json to_json(const HiggsData& h) {
  json marked = json::array(), flags = json::array(), residues = json::array();
  for (const cx& x : h.marked) marked.push_back(to_json(x));
  for (const Vec2& f : h.flags) flags.push_back(to_json(f));
  for (const Mat2& r : h.residues) residues.push_back(to_json(r));
  return json{{"type", "higgs"},
              {"n", h.n()},
              {"marked", marked},
              {"flags", flags},
              {"residues", residues}};
}

inline HiggsData higgs_from_json(const json& j) {
  const std::string where = "higgs";
  detail::expect_type(j, "higgs", where);
  const json& marked = detail::expect_field(j, "marked", where);
  const json& flags = detail::expect_field(j, "flags", where);
  const json& residues = detail::expect_field(j, "residues", where);
  if (!marked.is_array() || !flags.is_array() || !residues.is_array() ||
      marked.size() != flags.size() || marked.size() != residues.size()) {
    fail(ErrorCode::kSchema, where + ": marked/flags/residues lengths must agree");
  }
  HiggsData h;
  for (const json& v : marked) h.marked.push_back(complex_from_json(v, where + ".marked"));
  for (const json& v : flags) h.flags.push_back(vec2_from_json(v, where + ".flags"));
  for (const json& v : residues) h.residues.push_back(mat2_from_json(v, where + ".residues"));
  validate_higgs(h, 1e-8);
  return h;
}

inline json to_json(const ChartCoords& c) {
  json marked = json::array(), free = json::array();
  for (const cx& x : c.marked) marked.push_back(to_json(x));
  for (const ChartEntry& e : c.free_entries) {
    free.push_back(json{{"index", e.index + 1},
                        {"coord", to_json(e.coord)},
                        {"lambda", to_json(e.lambda)}});
  }
  return json{{"type", "chart"},
              {"n", c.n()},
              {"marked", marked},
              {"sigma", json::array({c.sigma[0] + 1, c.sigma[1] + 1})},
              {"side_a", detail::indices_to_json(c.side_a)},
              {"side_b", detail::indices_to_json(c.side_b)},
              {"eliminated", c.eliminated + 1},
              {"free", free}};
}

inline ChartCoords chart_from_json(const json& j) {
  const std::string where = "chart";
  detail::expect_type(j, "chart", where);
  const int n = detail::int_from_json(detail::expect_field(j, "n", where), where);
  ChartCoords c;
  const json& marked = detail::expect_field(j, "marked", where);
  if (!marked.is_array() || static_cast<int>(marked.size()) != n) {
    fail(ErrorCode::kSchema, where + ": marked must be an array of length n");
  }
  for (const json& v : marked) c.marked.push_back(complex_from_json(v, where + ".marked"));
  const json& sigma = detail::expect_field(j, "sigma", where);
  const std::vector<int> sg = detail::indices_from_json(sigma, n, where + ".sigma");
  if (sg.size() != 2) fail(ErrorCode::kSchema, where + ": sigma must have 2 entries");
  c.sigma = {sg[0], sg[1]};
  c.side_a = detail::indices_from_json(detail::expect_field(j, "side_a", where), n,
                                       where + ".side_a");
  c.side_b = detail::indices_from_json(detail::expect_field(j, "side_b", where), n,
                                       where + ".side_b");
  c.eliminated =
      detail::int_from_json(detail::expect_field(j, "eliminated", where), where) - 1;
  const json& free = detail::expect_field(j, "free", where);
  if (!free.is_array()) fail(ErrorCode::kSchema, where + ": free must be an array");
  for (const json& e : free) {
    ChartEntry entry;
    entry.index =
        detail::int_from_json(detail::expect_field(e, "index", where + ".free"),
                              where + ".free") -
        1;
    entry.coord = complex_from_json(detail::expect_field(e, "coord", where + ".free"),
                                    where + ".free.coord");
    entry.lambda = complex_from_json(detail::expect_field(e, "lambda", where + ".free"),
                                     where + ".free.lambda");
    c.free_entries.push_back(entry);
  }
  detail::validate_chart_structure(c);
  return c;
}

inline json to_json(const MinkVector& v) { return json::array({v.x, v.y, v.t}); }

inline MinkVector mink_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
      !j[2].is_number()) {
    fail(ErrorCode::kSchema, where + ": expected an [x, y, t] triple");
  }
  return MinkVector{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline json to_json(const NullPolygon& p) {
  json edges = json::array();
  for (const MinkVector& e : p.edges) edges.push_back(to_json(e));
  return json{{"type", "polygon"}, {"k1", p.k1}, {"k2", p.k2}, {"edges", edges}};
}

inline NullPolygon polygon_from_json(const json& j) {
  const std::string where = "polygon";
  detail::expect_type(j, "polygon", where);
  NullPolygon p;
  p.k1 = detail::int_from_json(detail::expect_field(j, "k1", where), where);
  p.k2 = detail::int_from_json(detail::expect_field(j, "k2", where), where);
  const json& edges = detail::expect_field(j, "edges", where);
  if (!edges.is_array()) fail(ErrorCode::kSchema, where + ": edges must be an array");
  for (const json& e : edges) p.edges.push_back(mink_from_json(e, where + ".edges"));
  if (static_cast<int>(p.edges.size()) != p.k1 + p.k2) {
    fail(ErrorCode::kSchema, where + ": edge count must equal k1 + k2");
  }
  return p;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json to_json(const SolveReport& r) {
  return json{{"type", "solve_report"},
              {"iterations", r.iterations},
              {"mu_real_residual", r.mu_real_residual},
              {"mu_complex_residual", r.mu_complex_residual},
              {"value_drop", r.value_drop},
              {"chart_norm_accum", r.chart_norm_accum}};
}

inline json to_json(const FixedPointWitness& w) {
  return json{{"type", "fixed_point_witness"},
              {"fixed", true},
              {"S", detail::indices_to_json(w.s)},
              {"gauge", to_json(w.gauge)},
              {"block_gauge", to_json(w.block_gauge)},
              {"block_point", to_json(w.block_point)}};
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kSchema, "cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorCode::kSchema, "malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kSchema, "cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace nullhyp
