#pragma once

// JSON documents exchanged by the command-line tool:
//   spec.json    {"d", "n", "A", "B", optional "k_max", optional "seed"}
//   result.json  {"d", "n", "basis", "k_max", "P": [{"k", "coeffs"}]}
//   f.json       {"d", "n", "coeffs": [[N rationals] per power of x]}
//   coeffs.json  {"d", "n", "basis", "coefficients": [[N rationals] per j]}
// Rationals are strings in lowest terms ("-4", "1/2").

#include "mvjacobi/oppoly.hpp"
#include "mvjacobi/operators.hpp"
#include "mvjacobi/polyspace.hpp"
#include "mvjacobi/structure.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mvjacobi::io {

using json = nlohmann::json;

/// Malformed or inconsistent input document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpecFile {
  ProblemSpec spec;
  std::optional<int> k_max;
  std::optional<std::uint64_t> seed;
};

inline Rational rational_from_json(const json& j) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  throw FormatError("expected a rational string \"p/q\", got " + j.dump());
}

inline json to_json(const Rational& r) { return to_string(r); }

inline json to_json(const Matrix<Rational>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const PolyVector& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(to_string(c));
  return a;
}

inline Matrix<Rational> matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& what) {
  if (!j.is_array() || j.size() != rows) throw FormatError(what + ": expected " + std::to_string(rows) + " rows");
  Matrix<Rational> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw FormatError(what + ": row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rational_from_json(j[i][c]);
  }
  return m;
}

inline PolyVector vector_from_json(const json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) throw FormatError(what + ": expected " + std::to_string(n) + " entries");
  PolyVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = rational_from_json(j[i]);
  return v;
}

inline int int_field(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) throw FormatError(std::string("missing integer field '") + key + "'");
  return doc[key].get<int>();
}

inline SpecFile parse_spec(const json& doc) {
  if (!doc.is_object()) throw FormatError("spec: top level must be an object");
  const int d = int_field(doc, "d");
  const int n = int_field(doc, "n");
  if (d < 1) throw FormatError("spec: d must be >= 1");
  if (n < 1) throw FormatError("spec: n must be >= 1");
  if (!doc.contains("A") || !doc.contains("B")) throw FormatError("spec: missing A or B");
  const auto ud = static_cast<std::size_t>(d);
  auto a = matrix_from_json(doc["A"], ud, ud, "A");
  auto b = matrix_from_json(doc["B"], ud, ud, "B");
  std::optional<int> k_max;
  if (doc.contains("k_max")) {
    k_max = int_field(doc, "k_max");
    if (*k_max < 0) throw FormatError("spec: k_max must be >= 0");
  }
  std::optional<std::uint64_t> seed;
  if (doc.contains("seed")) {
    const auto& s = doc["seed"];
    if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<std::int64_t>() < 0))
      throw FormatError("spec: seed must be a non-negative integer");
    seed = doc["seed"].get<std::uint64_t>();
  }
  try {
    return {ProblemSpec(n, std::move(a), std::move(b)), k_max, seed};
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("spec: ") + e.what());
  }
}

inline json spec_to_json(const ProblemSpec& spec) {
  return {{"d", spec.d()}, {"n", spec.n()}, {"A", to_json(spec.A())}, {"B", to_json(spec.B())}};
}

/// Basis ordering manifest: [{"m": [...], "j": 1-based component}, ...]
inline json basis_manifest(const PolySpace& space) {
  json out = json::array();
  for (const auto& b : space.basis()) out.push_back({{"m", b.m}, {"j", b.component + 1}});
  return out;
}

inline json oppoly_to_json(const OpPoly& p) {
  json coeffs = json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(to_json(c));
  return coeffs;
}

inline json result_to_json(const PolySpace& space, const std::vector<OpPoly>& polys) {
  json ps = json::array();
  for (std::size_t k = 0; k < polys.size(); ++k) ps.push_back({{"k", k}, {"coeffs", oppoly_to_json(polys[k])}});
  return {{"d", space.d()},
          {"n", space.n()},
          {"basis", basis_manifest(space)},
          {"k_max", static_cast<int>(polys.size()) - 1},
          {"P", std::move(ps)}};
}

struct ResultFile {
  PolySpace space;
  std::vector<OpPoly> polys;
};

inline ResultFile parse_result(const json& doc) {
  const int d = int_field(doc, "d"), n = int_field(doc, "n");
  PolySpace space(d, n);
  if (!doc.contains("basis") || doc["basis"] != basis_manifest(space))
    throw FormatError("result: basis manifest does not match the canonical ordering");
  if (!doc.contains("P") || !doc["P"].is_array()) throw FormatError("result: missing P");
  std::vector<OpPoly> polys;
  const std::size_t dim = space.dim();
  for (const auto& entry : doc["P"]) {
    std::vector<OperatorMatrix> coeffs;
    for (const auto& c : entry.at("coeffs")) coeffs.push_back(matrix_from_json(c, dim, dim, "P coefficient"));
    polys.emplace_back(std::move(coeffs), OperatorMatrix(dim, dim));
  }
  return {std::move(space), std::move(polys)};
}

inline json vectorpoly_to_json(const PolySpace& space, const VectorPoly& f) {
  json coeffs = json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(to_json(c));
  return {{"d", space.d()}, {"n", space.n()}, {"coeffs", std::move(coeffs)}};
}

/// Reads f.json and checks it lives over `space`.
inline VectorPoly parse_vectorpoly(const json& doc, const PolySpace& space) {
  if (!doc.is_object()) throw FormatError("poly: top level must be an object");
  if (int_field(doc, "d") != space.d() || int_field(doc, "n") != space.n())
    throw FormatError("poly: (d, n) does not match the problem");
  if (!doc.contains("coeffs") || !doc["coeffs"].is_array()) throw FormatError("poly: missing coeffs");
  std::vector<PolyVector> coeffs;
  for (const auto& c : doc["coeffs"]) coeffs.push_back(vector_from_json(c, space.dim(), "poly coefficient"));
  return VectorPoly(std::move(coeffs), PolyVector(space.dim()));
}

inline json expansion_to_json(const PolySpace& space, const Expansion& e) {
  json coeffs = json::array();
  for (const auto& q : e.coefficients) coeffs.push_back(to_json(q));
  return {{"d", space.d()}, {"n", space.n()}, {"basis", basis_manifest(space)}, {"coefficients", std::move(coeffs)}};
}

inline json report_to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json item = {{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) item["detail"] = c.detail;
    checks.push_back(std::move(item));
  }
  return {{"suite", r.suite}, {"pass", r.all_pass()}, {"checks", std::move(checks)}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace mvjacobi::io
