#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "loglift/lift.hpp"
#include "loglift/literal.hpp"

namespace loglift::io {

using json = nlohmann::ordered_json;

constexpr long kDefaultCap = 20;

// Precision cap from LOGLIFT_CAP, or the built-in default.
inline long default_cap() {
  const char* env = std::getenv("LOGLIFT_CAP");
  if (!env || !*env) return kDefaultCap;
  char* end = nullptr;
  long cap = std::strtol(env, &end, 10);
  if (*end != '\0' || cap < 1) throw SchemaError(std::string("LOGLIFT_CAP must be a positive integer, got '") + env + "'");
  return cap;
}

inline json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

namespace detail {

[[noreturn]] inline void schema(const std::string& path, const std::string& what) { throw SchemaError(path + ": " + what); }

inline const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

inline long as_long(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  return j.get<long>();
}

inline std::size_t as_count(const json& j, const std::string& path) {
  long v = as_long(j, path);
  if (v < 0) schema(path, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

inline std::string at(const std::string& path, std::size_t k) { return path + "[" + std::to_string(k) + "]"; }

inline Element element(const Field& F, const json& j, const std::string& path) {
  if (j.is_number_integer()) return Element::integer(F, j.get<long>());
  if (!j.is_string()) schema(path, "expected an integer or a literal string");
  try {
    return parse_element(F, j.get<std::string>());
  } catch (const ParseError& e) {
    schema(path, e.what());
  }
}

inline Matrix matrix(const Field& F, const json& j, const std::string& path, std::optional<std::size_t> rows = {},
                     std::optional<std::size_t> cols = {}) {
  if (!j.is_array()) schema(path, "expected an array of rows");
  std::size_t r = j.size();
  if (rows && r != *rows) schema(path, "expected " + std::to_string(*rows) + " rows, got " + std::to_string(r));
  if (r == 0) schema(path, "matrix has no rows");
  if (!j[0].is_array()) schema(at(path, 0), "expected an array");
  std::size_t c = j[0].size();
  if (cols && c != *cols) schema(at(path, 0), "expected " + std::to_string(*cols) + " entries, got " + std::to_string(c));
  Matrix m(F, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    const json& row = j[i];
    if (!row.is_array()) schema(at(path, i), "expected an array");
    if (row.size() != c) schema(at(path, i), "ragged row: expected " + std::to_string(c) + " entries");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = element(F, row[k], at(at(path, i), k));
  }
  return m;
}

inline IntMatrix int_matrix(const json& j, const std::string& path, std::size_t n) {
  if (!j.is_array() || j.size() != n) schema(path, "expected " + std::to_string(n) + " rows");
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) schema(at(path, i), "expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) out[i].push_back(as_long(j[i][k], at(at(path, i), k)));
  }
  return out;
}

// "e_I_J" with 1-based indices.
inline Root root_from_name(const std::string& name, const std::string& path) {
  unsigned a = 0, b = 0;
  char tail = 0;
  if (std::sscanf(name.c_str(), "e_%u_%u%c", &a, &b, &tail) != 2 || a == 0 || b == 0)
    schema(path, "generator names look like e_1_2, got '" + name + "'");
  return {a - 1, b - 1};
}

inline json element_json(const Element& x) {
  if (x.is_exact_zero()) return 0;
  if (x.is_exact() && x.field().degree() == 1 && x.coefficient(0).is_integral_exact() &&
      x.coefficient(0).valuation() < 18) {
    mpz_class v = x.coefficient(0).unit() * x.coefficient(0).context().power(x.coefficient(0).valuation());
    if (v.fits_slong_p()) return v.get_si();
  }
  return format_element(x);
}

}  // namespace detail

// {"p": 5, "cap": 20, "extension": "sqrt_p" | {"unramified": d, "modulus": [...]}}
inline const Field& parse_field(const json& j, std::optional<long> cap_override = {}, const std::string& path = "field") {
  long p = detail::as_long(detail::require(j, "p", path), detail::join(path, "p"));
  mpz_class pp = p;
  if (p < 2 || !mpz_probab_prime_p(pp.get_mpz_t(), 25)) detail::schema(detail::join(path, "p"), std::to_string(p) + " is not prime");
  long cap = cap_override ? *cap_override : default_cap();
  if (!cap_override && j.contains("cap")) cap = detail::as_long(j["cap"], detail::join(path, "cap"));
  if (cap < 1) detail::schema(detail::join(path, "cap"), "precision cap must be positive");
  ExtensionSpec ext;
  if (j.contains("extension")) {
    const json& e = j["extension"];
    std::string epath = detail::join(path, "extension");
    if (e.is_string() && e.get<std::string>() == "sqrt_p") {
      ext = {ExtensionKind::SqrtP, 2, {}};
    } else if (e.is_string() && e.get<std::string>() == "none") {
    } else if (e.is_object()) {
      int d = static_cast<int>(detail::as_long(detail::require(e, "unramified", epath), epath + ".unramified"));
      if (d < 1) detail::schema(epath + ".unramified", "degree must be positive");
      ext = {ExtensionKind::Unramified, d, {}};
      if (e.contains("modulus")) {
        const json& m = e["modulus"];
        if (!m.is_array() || m.size() != static_cast<std::size_t>(d))
          detail::schema(epath + ".modulus", "expected " + std::to_string(d) + " coefficients");
        for (std::size_t k = 0; k < m.size(); ++k) ext.modulus.push_back(detail::as_long(m[k], detail::at(epath + ".modulus", k)));
      }
    } else {
      detail::schema(epath, "expected \"none\", \"sqrt_p\" or {\"unramified\": d}");
    }
  }
  try {
    return Field::get(p, cap, ext);
  } catch (const std::invalid_argument& e) {
    detail::schema(path, e.what());
  }
}

inline json serialize_field(const Field& F) {
  json j;
  j["p"] = F.prime();
  j["cap"] = F.cap();
  const ExtensionSpec& s = F.spec();
  if (s.kind == ExtensionKind::SqrtP) j["extension"] = "sqrt_p";
  if (s.kind == ExtensionKind::Unramified) j["extension"] = {{"unramified", s.degree}, {"modulus", s.modulus}};
  return j;
}

inline json serialize_matrix(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(detail::element_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

// {"field": {...}, "composition": [1, 1], "dim": 2, "full_algebra": false,
//  "action": {"e_1_1": [[...]], ...}}
inline FdPModule parse_module(const json& j, std::optional<long> cap_override = {}) {
  const Field& F = parse_field(detail::require(j, "field", ""), cap_override);
  const json& comp = detail::require(j, "composition", "");
  if (!comp.is_array() || comp.empty()) detail::schema("composition", "expected a non-empty array of block sizes");
  std::vector<std::size_t> blocks;
  for (std::size_t k = 0; k < comp.size(); ++k) {
    std::size_t b = detail::as_count(comp[k], detail::at("composition", k));
    if (b == 0) detail::schema(detail::at("composition", k), "block sizes must be positive");
    blocks.push_back(b);
  }
  GLnContext ctx(blocks);
  std::size_t dim = detail::as_count(detail::require(j, "dim", ""), "dim");
  if (dim == 0) detail::schema("dim", "dimension must be positive");
  bool full = false;
  if (j.contains("full_algebra")) {
    if (!j["full_algebra"].is_boolean()) detail::schema("full_algebra", "expected a boolean");
    full = j["full_algebra"].get<bool>();
  }
  std::map<Root, Matrix> action;
  if (j.contains("action")) {
    const json& a = j["action"];
    if (!a.is_object()) detail::schema("action", "expected an object keyed by generator name");
    for (auto it = a.begin(); it != a.end(); ++it) {
      std::string path = "action." + it.key();
      Root r = detail::root_from_name(it.key(), path);
      if (r.i >= ctx.n() || r.j >= ctx.n()) detail::schema(path, "index out of range for n = " + std::to_string(ctx.n()));
      if (!full && !ctx.in_parabolic(r.i, r.j)) detail::schema(path, "generator is not in the parabolic subalgebra");
      if (action.count(r)) detail::schema(path, "duplicate generator");
      action.emplace(r, detail::matrix(F, it.value(), path, dim, dim));
    }
  }
  return FdPModule(ctx, F, dim, action, full);
}

inline json serialize_module(const FdPModule& m) {
  json j;
  j["field"] = serialize_field(m.field());
  j["composition"] = m.ctx().composition();
  j["dim"] = m.dim();
  if (m.is_full_algebra()) j["full_algebra"] = true;
  json action = json::object();
  for (const auto& [r, img] : m.images())
    if (!img.is_zero()) action[root_name(r)] = serialize_matrix(img);
  j["action"] = action;
  return j;
}

// {"basis": [[...]], "branches": ["2 + O(5^10)", ...], "shift": [[...]]}; the
// basis defaults to the identity.
inline TorusLogarithm parse_log(const json& j, const Field& F) {
  if (j.contains("field")) {
    const json& f = j["field"];
    long p = detail::as_long(detail::require(f, "p", "field"), "field.p");
    if (p != F.prime()) detail::schema("field.p", "logarithm is over Q_" + std::to_string(p) + " but the module is over Q_" + std::to_string(F.prime()));
  }
  const json& br = detail::require(j, "branches", "");
  if (!br.is_array() || br.empty()) detail::schema("branches", "expected a non-empty array");
  std::vector<Element> branches;
  for (std::size_t k = 0; k < br.size(); ++k) branches.push_back(detail::element(F, br[k], detail::at("branches", k)));
  std::size_t n = branches.size();
  IntMatrix basis(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;
  if (j.contains("basis")) basis = detail::int_matrix(j["basis"], "basis", n);
  std::optional<Matrix> shift;
  if (j.contains("shift")) shift = detail::matrix(F, j["shift"], "shift", n, n);
  try {
    return TorusLogarithm(F, basis, branches, shift);
  } catch (const std::invalid_argument& e) {
    detail::schema("basis", e.what());
  }
}

inline json serialize_log(const TorusLogarithm& log) {
  json j;
  j["basis"] = log.basis();
  json br = json::array();
  for (const auto& b : log.branches()) br.push_back(format_element(b));
  j["branches"] = br;
  if (!log.shift().is_zero()) j["shift"] = serialize_matrix(log.shift());
  return j;
}

// {"matrix": [[...]]} or {"matrices": [[[...]], ...]}.
inline std::vector<Matrix> parse_elements(const json& j, const Field& F, std::size_t n) {
  std::vector<Matrix> out;
  if (j.contains("matrix")) out.push_back(detail::matrix(F, j["matrix"], "matrix", n, n));
  if (j.contains("matrices")) {
    const json& a = j["matrices"];
    if (!a.is_array()) detail::schema("matrices", "expected an array of matrices");
    for (std::size_t k = 0; k < a.size(); ++k) out.push_back(detail::matrix(F, a[k], detail::at("matrices", k), n, n));
  }
  if (out.empty()) detail::schema("matrix", "missing field");
  return out;
}

inline json serialize_elements(const std::vector<Matrix>& gs) {
  json j;
  if (gs.size() == 1) {
    j["matrix"] = serialize_matrix(gs[0]);
  } else {
    json a = json::array();
    for (const auto& g : gs) a.push_back(serialize_matrix(g));
    j["matrices"] = a;
  }
  return j;
}

}  // namespace loglift::io
