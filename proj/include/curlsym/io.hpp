#pragma once
// JSON forms of polynomials, symbol jets, curvature configs and reports.
// Rationals travel as "p/q" strings so round trips are bit-exact.

#include "curlsym/berger.hpp"
#include "curlsym/hodge.hpp"
#include "curlsym/kernel.hpp"
#include "curlsym/projections.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace curlsym {

using json = nlohmann::json;

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected a rational string \"p/q\" or an integer");
}

inline json to_json(const TruncatedPoly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {  // map order = lexicographic in the exponent
    json exp = json::array();
    for (auto e : m.e) exp.push_back(int(e));
    terms.push_back({{"exp", exp}, {"re", to_string(c.re)}, {"im", to_string(c.im)}});
  }
  return {{"order", p.order()}, {"terms", terms}};
}

inline TruncatedPoly poly_from_json(const json& j) {
  int order = j.at("order").get<int>();
  if (order < 0) throw std::invalid_argument("polynomial order must be non-negative");
  TruncatedPoly p = TruncatedPoly::constant(GaussianRational(), order);
  for (const auto& t : j.at("terms")) {
    const auto& exp = t.at("exp");
    if (!exp.is_array() || exp.size() != 6) throw std::invalid_argument("exponent must have 6 entries");
    MultiIndex m;
    for (std::size_t k = 0; k < 6; ++k) {
      int e = exp[k].get<int>();
      if (e < 0 || e > 255) throw std::invalid_argument("exponent out of range");
      m.e[k] = std::uint8_t(e);
    }
    if (m.degree() > order) throw std::invalid_argument("term degree exceeds polynomial order");
    p.add_term(m, GaussianRational(rational_from_json(t.at("re")), rational_from_json(t.at("im"))));
  }
  return p;
}

inline json to_json(const PolyMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols; ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

inline PolyMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw std::invalid_argument("matrix must be an array of rows");
  int rows = int(j.size()), cols = int(j[0].size());
  std::vector<TruncatedPoly> entries;
  for (const auto& row : j) {
    if (int(row.size()) != cols) throw std::invalid_argument("ragged matrix");
    for (const auto& e : row) entries.push_back(poly_from_json(e));
  }
  PolyMatrix m(rows, cols, 0);
  m.a = std::move(entries);
  return m;
}

inline json to_json(const SymbolJet& s) {
  json comps = json::array();
  for (const auto& c : s.comp) comps.push_back(to_json(c));
  return {{"top_degree", s.top_degree}, {"accuracy", s.accuracy}, {"shape", {s.rows, s.cols}}, {"components", comps}};
}

inline SymbolJet jet_from_json(const json& j) {
  int n = j.at("accuracy").get<int>();
  auto shape = j.at("shape").get<std::vector<int>>();
  if (shape.size() != 2) throw std::invalid_argument("shape must be [rows, cols]");
  const auto& comps = j.at("components");
  if (int(comps.size()) != n + 1) throw std::invalid_argument("component count must be accuracy + 1");
  SymbolJet s(j.at("top_degree").get<int>(), n, shape[0], shape[1]);
  for (int k = 0; k <= n; ++k) {
    PolyMatrix m = matrix_from_json(comps[std::size_t(k)]);
    if (m.order() != s.order_of(k)) throw std::invalid_argument("component order does not follow the grading schedule");
    s.set(k, m);
  }
  return s;
}

inline json to_json(const CurvatureConfig& cfg) {
  json ric = json::array(), dric = json::array();
  for (int a = 0; a < 3; ++a) {
    json row = json::array();
    for (int b = 0; b < 3; ++b) row.push_back(to_string(cfg.ric(a, b)));
    ric.push_back(row);
  }
  for (int s = 0; s < 3; ++s) {
    json mat = json::array();
    for (int a = 0; a < 3; ++a) {
      json row = json::array();
      for (int b = 0; b < 3; ++b) row.push_back(to_string(cfg.dric(s, a, b)));
      mat.push_back(row);
    }
    dric.push_back(mat);
  }
  return {{"ric", ric}, {"dric", dric}};
}

inline CurvatureConfig config_from_json(const json& j) {
  CurvatureConfig cfg;
  auto read_sym = [](const json& m, auto&& store, const char* what) {
    if (!m.is_array() || m.size() != 3) throw std::invalid_argument(std::string(what) + " must be 3x3");
    for (int a = 0; a < 3; ++a) {
      if (!m[std::size_t(a)].is_array() || m[std::size_t(a)].size() != 3)
        throw std::invalid_argument(std::string(what) + " must be 3x3");
    }
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) {
        Rational v = rational_from_json(m[std::size_t(a)][std::size_t(b)]);
        if (v != rational_from_json(m[std::size_t(b)][std::size_t(a)]))
          throw std::invalid_argument(std::string(what) + " must be symmetric");
        store(a, b, v);
      }
  };
  if (j.contains("ric")) read_sym(j.at("ric"), [&](int a, int b, const Rational& v) { cfg.ric(a, b) = v; }, "ric");
  if (j.contains("dric")) {
    const auto& d = j.at("dric");
    if (!d.is_array() || d.size() != 3) throw std::invalid_argument("dric must hold three 3x3 matrices");
    for (int s = 0; s < 3; ++s)
      read_sym(d[std::size_t(s)], [&](int a, int b, const Rational& v) { cfg.dric(s, a, b) = v; }, "dric");
  }
  return cfg;
}

// Built-in name or path to a JSON file.
inline CurvatureConfig load_config(const std::string& source) {
  try {
    return CurvatureConfig::named(source);
  } catch (const std::invalid_argument&) {
  }
  std::ifstream in(source);
  if (!in) throw std::runtime_error("cannot open config: " + source);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("cannot parse config " + source + ": " + e.what());
  }
  return config_from_json(j);
}

inline json to_json(const ProjectionStep& s) {
  return {{"k", s.k}, {"R", to_json(s.R)}, {"S", to_json(s.S)}, {"T", to_json(s.T)}, {"X", to_json(s.X)}};
}

// Constant parts as strings, for reading values at the anchor.
inline json anchor_values(const PolyMatrix& m) {
  json rows = json::array();
  for (const auto& r : constant_part(m)) {
    json row = json::array();
    for (const auto& v : r) row.push_back(to_string(v));
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const ProjectionFamily& f) {
  json steps = json::array();
  for (const auto& s : f.steps) {
    json st = to_json(s);
    st["anchor"] = {{"R", anchor_values(s.R)}, {"S", anchor_values(s.S)}, {"T", anchor_values(s.T)}, {"X", anchor_values(s.X)}};
    steps.push_back(st);
  }
  return {{"aleph", aleph_name(f.aleph)}, {"accuracy", f.accuracy}, {"jet", to_json(f.jet)}, {"steps", steps}};
}

inline json to_json(const AsymmetryReport& r) {
  json diag = json::array(), pt = json::array();
  for (const auto& v : r.diag_traces) diag.push_back(to_string(v));
  for (const auto& v : r.pt_corrections) pt.push_back(to_string(v));
  return {{"diag_traces", diag},
          {"pt_corrections", pt},
          {"a_prin", to_string(r.a_prin_value)},
          {"closed_form", to_string(r.closed_form_value)},
          {"pass", r.pass()}};
}

inline json to_json(const CheckResult& c) {
  return {{"name", c.name}, {"inputs", c.input}, {"value", c.value}, {"reference", c.reference},
          {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass()}};
}

inline std::string spectrum_csv(const SpectrumTable& t) {
  std::ostringstream os;
  os.precision(17);
  os << "series,n,l,value,multiplicity\n";
  for (const auto& e : t.entries) os << series_name(e.series) << ',' << e.n << ',' << e.l << ',' << e.value << ',' << e.multiplicity << '\n';
  return os.str();
}

}  // namespace curlsym
