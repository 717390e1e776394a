#pragma once

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "loglift/builtin.hpp"
#include "loglift/group_ring.hpp"
#include "loglift/induced.hpp"
#include "loglift/io.hpp"
#include "loglift/random.hpp"

namespace loglift::cli {

struct JobSpec {
  std::string command;  // lift, verma, weights, check, check-dgh, example
  std::string example;  // breuil or schraen
  std::string module_path;
  std::string log_path;
  std::string element_path;
  std::size_t depth = 2;
  std::size_t max_basis = TruncatedInduced::kDefaultMaxBasis;
  std::optional<std::size_t> samples;
  std::optional<long> twist;
  std::optional<long> cap;
  bool check = false;
  bool weights = false;
  bool json = false;
  std::uint64_t seed = 1;
  long p = 5;
  long k = 2;
  std::string L = "2 + O(5^10)";
  std::string Lp = "4 + 5^3 + O(5^20)";

  std::size_t samples_or(std::size_t fallback) const { return samples.value_or(fallback); }
};

struct Outcome {
  int status = 0;
  std::string out;
  std::string err;
};

struct Suite {
  std::string name;
  std::size_t checks = 0;
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

namespace detail {

inline std::string weight_str(const std::vector<long>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? ", " : "") + std::to_string(w[i]);
  return s + ")";
}

inline std::string digits(const Rational& r) { return rational_str(r); }

inline std::string indent(const std::string& s, const std::string& pad) {
  std::string out = pad;
  for (char c : s) {
    out += c;
    if (c == '\n') out += pad;
  }
  return out;
}

inline void render_suites(const std::vector<Suite>& suites, bool as_json, std::ostream& os) {
  bool all = true;
  for (const auto& s : suites) all = all && s.passed();
  if (as_json) {
    io::json j;
    j["passed"] = all;
    io::json arr = io::json::array();
    for (const auto& s : suites)
      arr.push_back({{"name", s.name}, {"passed", s.passed()}, {"checks", s.checks}, {"violations", s.violations}});
    j["suites"] = arr;
    os << j.dump(2) << "\n";
    return;
  }
  for (const auto& s : suites) {
    os << s.name << ": " << (s.passed() ? "PASS" : "FAIL") << " (" << s.checks << " checks, " << s.violations.size()
       << " violations)\n";
    for (const auto& v : s.violations) os << "  - " << v << "\n";
  }
  os << (all ? "all suites passed" : "some suites failed") << "\n";
}

inline Suite guarded(const std::string& name, const std::function<void(Suite&)>& body) {
  Suite s{name, 0, {}};
  try {
    body(s);
  } catch (const std::exception& e) {
    s.violations.push_back(std::string("error: ") + e.what());
  }
  return s;
}

}  // namespace detail

// Digits carried by the inputs: the cap, lowered by any inexact entry.
inline long input_digits(const FdPModule& m, const std::optional<TorusLogarithm>& log = {}) {
  const Field& F = m.field();
  Rational d = F.cap();
  auto lower = [&](const Element& x) {
    if (!x.is_exact()) d = std::min(d, x.precision());
  };
  for (const auto& [r, img] : m.images())
    for (const auto& x : img.data()) lower(x);
  if (log)
    for (const auto& b : log->branches()) lower(b);
  return static_cast<long>(floor_rational(d));
}

// Invariant suites for a module, and for its lift when a logarithm is given.
// Agreement is required to input_digits - 4 digits.
inline std::vector<Suite> check_suites(const FdPModule& m, const std::optional<TorusLogarithm>& log, std::size_t samples,
                                       Rng& rng) {
  const Field& F = m.field();
  long target = input_digits(m, log);
  std::vector<Suite> out;
  out.push_back(detail::guarded("lie_hom", [&](Suite& s) {
    auto gens = m.generators();
    s.checks = gens.size() * gens.size();
    for (const auto& v : check_lie_hom(m).violations)
      s.violations.push_back("[" + root_name(v.a) + ", " + root_name(v.b) + "] agreement " + detail::digits(v.agreement));
  }));
  out.push_back(detail::guarded("category", [&](Suite& s) {
    CategoryReport r = category_membership(m);
    s.checks = 5;
    if (!r.member()) s.violations.push_back(r.failure.empty() ? "not in the category" : r.failure);
  }));
  if (!log) return out;
  if (!out[0].passed() || !out[1].passed()) {
    out.push_back({"lift", 1, {"skipped: the module must be a Lie algebra homomorphism in the category"}});
    return out;
  }
  std::optional<LiftedRep> rep;
  out.push_back(detail::guarded("lift", [&](Suite& s) {
    s.checks = 1;
    rep.emplace(m, *log);
  }));
  if (!rep) return out;
  const GLnContext& ctx = m.ctx();
  Rational need = target - 4;
  out.push_back(detail::guarded("homomorphism", [&](Suite& s) {
    for (std::size_t k = 0; k < samples; ++k) {
      Matrix g1 = random_parabolic(ctx, F, rng), g2 = random_parabolic(ctx, F, rng);
      Rational a = relative_agreement(rep->eval(g1 * g2), rep->eval(g1) * rep->eval(g2));
      ++s.checks;
      if (a < need) s.violations.push_back("sample " + std::to_string(k) + ": agreement " + detail::digits(a));
    }
  }));
  out.push_back(detail::guarded("ad_compatibility", [&](Suite& s) {
    auto gens = ctx.parabolic_roots();
    for (std::size_t k = 0; k < samples; ++k) {
      Matrix h = random_parabolic(ctx, F, rng);
      Root r = gens[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(gens.size()) - 1))];
      std::size_t col = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(m.dim()) - 1));
      Matrix x = Matrix::elementary(F, ctx.n(), r.i, r.j, Element::one(F));
      Matrix rh = rep->eval(h);
      Rational a = loglift::detail::column_agreement(rep->phi(ad_action(h, x)) * rh, rh * rep->phi(x), col);
      ++s.checks;
      if (a < need)
        s.violations.push_back("sample " + std::to_string(k) + " " + root_name(r) + " column " + std::to_string(col) +
                               ": agreement " + detail::digits(a));
    }
  }));
  bool has_levi = false;
  for (std::size_t b = 0; b < ctx.num_blocks(); ++b) has_levi = has_levi || ctx.block_size(b) > 1;
  if (has_levi) {
    out.push_back(detail::guarded("pivot_independence", [&](Suite& s) {
      for (std::size_t k = 0; k < samples; ++k) {
        Matrix h = random_special_levi(ctx, F, rng);
        Matrix a = rep->eval_levi(h, PivotRule::MinValuation);
        for (auto rule : {PivotRule::FirstNonzero, PivotRule::LastNonzero}) {
          Rational ag = relative_agreement(a, rep->eval_levi(h, rule));
          ++s.checks;
          if (ag < need) s.violations.push_back("sample " + std::to_string(k) + ": agreement " + detail::digits(ag));
        }
      }
    }));
  }
  out.push_back(detail::guarded("dgh_compatibility", [&](Suite& s) {
    DgHReport r = check_dgh_compatibility(witness_from_lift(*rep), samples, rng, 4, target);
    s.checks = r.checks;
    for (const auto& v : r.violations)
      s.violations.push_back("sample " + std::to_string(v.sample) + " " + root_name(v.generator) + " column " +
                             std::to_string(v.basis_vector) + ": agreement " + detail::digits(v.agreement));
  }));
  return out;
}

namespace detail {

inline void require_path(const std::string& path, const std::string& flag) {
  if (path.empty()) throw SchemaError(flag + " is required");
}

inline int run_lift(const JobSpec& job, std::ostream& os) {
  require_path(job.module_path, "--module");
  require_path(job.log_path, "--log");
  require_path(job.element_path, "--element");
  FdPModule m = io::parse_module(io::read_json_file(job.module_path), job.cap);
  const Field& F = m.field();
  TorusLogarithm log = io::parse_log(io::read_json_file(job.log_path), F);
  std::vector<Matrix> gs = io::parse_elements(io::read_json_file(job.element_path), F, m.ctx().n());
  LiftedRep rep(m, log);
  std::optional<SmoothCharacter> alpha;
  if (job.twist) alpha = SmoothCharacter::alpha(m.ctx(), F, *job.twist);
  std::vector<Matrix> values;
  for (const auto& g : gs) values.push_back(alpha ? smooth_twist(rep.eval(g), *alpha, g) : rep.eval(g));
  std::vector<Suite> suites;
  if (job.check) {
    Suite s{"homomorphism_on_inputs", 0, {}};
    Rational need = input_digits(m, log) - 4;
    for (std::size_t a = 0; a < gs.size(); ++a)
      for (std::size_t b = 0; b < gs.size(); ++b) {
        Rational ag = relative_agreement(rep.eval(gs[a] * gs[b]), rep.eval(gs[a]) * rep.eval(gs[b]));
        ++s.checks;
        if (ag < need)
          s.violations.push_back("pair (" + std::to_string(a) + ", " + std::to_string(b) + "): agreement " + digits(ag));
      }
    suites.push_back(s);
  }
  if (job.json) {
    io::json j;
    j["field"] = io::serialize_field(F);
    io::json arr = io::json::array();
    for (std::size_t k = 0; k < gs.size(); ++k)
      arr.push_back({{"element", io::serialize_matrix(gs[k])}, {"lift", io::serialize_matrix(values[k])}});
    j["results"] = arr;
    if (job.twist) j["twist"] = *job.twist;
    if (job.check) {
      std::ostringstream tmp;
      render_suites(suites, true, tmp);
      j["check"] = io::json::parse(tmp.str());
    }
    os << j.dump(2) << "\n";
  } else {
    os << "field: Q_" << F.prime() << (F.degree() > 1 ? " extension of degree " + std::to_string(F.degree()) : "")
       << ", cap " << F.cap() << "\n";
    for (std::size_t k = 0; k < gs.size(); ++k) {
      os << "g[" << k << "] =\n" << indent(format_matrix(gs[k]), "  ") << "\n";
      os << (alpha ? "twisted lift =\n" : "lift =\n") << indent(format_matrix(values[k]), "  ") << "\n";
    }
    if (job.check) render_suites(suites, false, os);
  }
  for (const auto& s : suites)
    if (!s.passed()) return 1;
  return 0;
}

inline int run_verma(const JobSpec& job, std::ostream& os) {
  require_path(job.module_path, "--module");
  FdPModule m = io::parse_module(io::read_json_file(job.module_path), job.cap);
  TruncatedInduced t(m, job.depth, job.max_basis);
  if (job.json) {
    io::json j;
    j["depth"] = job.depth;
    j["dim"] = t.dim();
    j["monomials"] = t.monomials().size();
    if (job.weights) {
      io::json arr = io::json::array();
      for (const auto& [w, k] : t.weight_multiplicities()) arr.push_back({{"weight", w}, {"multiplicity", k}});
      j["weights"] = arr;
    }
    os << j.dump(2) << "\n";
    return 0;
  }
  os << "depth " << job.depth << ": dimension " << t.dim() << " (" << t.monomials().size() << " monomials x base "
     << m.dim() << ")\n";
  if (job.weights) {
    os << "weight multiplicity\n";
    for (const auto& [w, k] : t.weight_multiplicities()) os << weight_str(w) << " " << k << "\n";
  }
  return 0;
}

inline int run_weights(const JobSpec& job, std::ostream& os) {
  require_path(job.module_path, "--module");
  FdPModule m = io::parse_module(io::read_json_file(job.module_path), job.cap);
  PrimaryDecomposition dec = weight_decomposition(m);
  if (job.json) {
    io::json arr = io::json::array();
    for (const auto& c : dec.components) arr.push_back({{"weight", c.weight}, {"multiplicity", c.basis.cols()}});
    os << io::json{{"dim", dec.dim}, {"weights", arr}}.dump(2) << "\n";
    return 0;
  }
  os << "weight multiplicity\n";
  for (const auto& c : dec.components) os << weight_str(c.weight) << " " << c.basis.cols() << "\n";
  return 0;
}

inline int run_check(const JobSpec& job, std::ostream& os, Rng& rng) {
  require_path(job.module_path, "--module");
  FdPModule m = io::parse_module(io::read_json_file(job.module_path), job.cap);
  std::optional<TorusLogarithm> log;
  if (!job.log_path.empty()) log = io::parse_log(io::read_json_file(job.log_path), m.field());
  auto suites = check_suites(m, log, job.samples_or(50), rng);
  render_suites(suites, job.json, os);
  for (const auto& s : suites)
    if (!s.passed()) return 1;
  return 0;
}

inline int run_check_dgh(const JobSpec& job, std::ostream& os, Rng& rng) {
  require_path(job.module_path, "--module");
  require_path(job.log_path, "--log");
  FdPModule m = io::parse_module(io::read_json_file(job.module_path), job.cap);
  TorusLogarithm log = io::parse_log(io::read_json_file(job.log_path), m.field());
  LiftedRep rep(m, log);
  std::size_t samples = job.samples_or(100);
  long target = input_digits(m, log);
  Suite s = guarded("dgh_compatibility", [&](Suite& s) {
    DgHReport r = check_dgh_compatibility(witness_from_lift(rep), samples, rng, 4, target);
    s.checks = r.checks;
    for (const auto& v : r.violations)
      s.violations.push_back("sample " + std::to_string(v.sample) + " " + root_name(v.generator) + " column " +
                             std::to_string(v.basis_vector) + ": agreement " + digits(v.agreement));
  });
  Suite t = guarded("tensor_trivial", [&](Suite& s) {
    DgHReport r = check_dgh_compatibility(tensor_dgh(rep, trivial_witness(m.ctx(), m.field())), samples, rng, 4, target);
    s.checks = r.checks;
    for (const auto& v : r.violations) s.violations.push_back("sample " + std::to_string(v.sample) + ": agreement " + digits(v.agreement));
  });
  Suite a = guarded("adjunction", [&](Suite& s) {
    AdjunctionReport r = adjunction_check(rep, trivial_witness(m.ctx(), m.field()), std::max<std::size_t>(1, samples / 10), rng, 4, target);
    s.checks = r.checks;
    s.violations = r.violations;
  });
  std::vector<Suite> suites{s, t, a};
  render_suites(suites, job.json, os);
  for (const auto& x : suites)
    if (!x.passed()) return 1;
  return 0;
}

inline int run_example_breuil(const JobSpec& job, std::ostream& os) {
  long cap = job.cap ? *job.cap : io::default_cap();
  const Field& F = job.k % 2 == 0 ? Field::get(job.p, cap) : Field::sqrt_p(job.p, cap);
  Element l = parse_element(F, job.L);
  LiftedRep rep(breuil_module(F, job.k), breuil_log(l));
  SmoothCharacter alpha = SmoothCharacter::alpha(rep.ctx(), F, job.k);
  Element p = Element::integer(F, job.p), one = Element::one(F);
  std::vector<std::pair<std::string, Matrix>> rows = {
      {"diag(p, 1)", Matrix::diagonal(F, {p, one})},
      {"diag(1, p)", Matrix::diagonal(F, {one, p})},
      {"[[p, 1], [0, 1]]", Matrix::from_ints(F, {{job.p, 1}, {0, 1}})}};
  if (job.json) {
    io::json arr = io::json::array();
    for (const auto& [name, g] : rows) {
      Matrix v = rep.eval(g);
      arr.push_back({{"element", name}, {"lift", io::serialize_matrix(v)},
                     {"twisted", io::serialize_matrix(smooth_twist(v, alpha, g))}});
    }
    os << io::json{{"L", format_element(l)}, {"k", job.k}, {"results", arr}}.dump(2) << "\n";
    return 0;
  }
  os << "Breuil module, k = " << job.k << ", L = " << format_element(l) << ", cap " << F.cap() << "\n";
  for (const auto& [name, g] : rows) {
    Matrix v = rep.eval(g);
    os << "lift at " << name << " =\n" << indent(format_matrix(v), "  ") << "\n";
    if (job.k != 2) os << "twisted by |det|^(-(k-2)/2) =\n" << indent(format_matrix(smooth_twist(v, alpha, g)), "  ") << "\n";
  }
  return 0;
}

inline int run_example_schraen(const JobSpec& job, std::ostream& os, Rng& rng) {
  long cap = job.cap ? *job.cap : io::default_cap();
  const Field& F = Field::get(job.p, cap);
  Element l = parse_element(F, job.L), lp = parse_element(F, job.Lp);
  TorusLogarithm log = schraen_log(l, lp);
  std::size_t n = std::max<std::size_t>(job.samples_or(5), 1);
  io::json arr = io::json::array();
  bool ok = true;
  std::ostringstream table;
  for (std::size_t s = 0; s < n; ++s) {
    auto t = random_torus(F, 3, rng);
    auto got = log.evaluate(t), want = schraen_closed_form(l, lp, t);
    bool agree = true;
    for (std::size_t i = 0; i < 3; ++i) agree = agree && got[i].agrees_with(want[i], F.cap() - 2);
    ok = ok && agree;
    auto fmt = [](const std::vector<Element>& v) {
      std::string out = "(";
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_element(v[i]);
      return out + ")";
    };
    table << "t[" << s << "] = " << fmt(t) << "\n  log         = " << fmt(got) << "\n  closed form = " << fmt(want)
          << "\n  agree: " << (agree ? "yes" : "NO") << "\n";
    io::json row;
    io::json tj = io::json::array(), gj = io::json::array(), wj = io::json::array();
    for (std::size_t i = 0; i < 3; ++i) {
      tj.push_back(format_element(t[i]));
      gj.push_back(format_element(got[i]));
      wj.push_back(format_element(want[i]));
    }
    arr.push_back({{"t", tj}, {"log", gj}, {"closed_form", wj}, {"agree", agree}});
  }
  if (job.json)
    os << io::json{{"L", format_element(l)}, {"Lp", format_element(lp)}, {"rows", arr}, {"passed", ok}}.dump(2) << "\n";
  else
    os << "Schraen logarithm, L = " << format_element(l) << ", L' = " << format_element(lp) << "\n" << table.str();
  return ok ? 0 : 1;
}

}  // namespace detail

// Exit status 0 on success, 1 on a failed invariant, 2 on bad input.
inline Outcome run(const JobSpec& job) {
  Outcome o;
  std::ostringstream os;
  Rng rng(job.seed);
  try {
    if (job.command == "lift")
      o.status = detail::run_lift(job, os);
    else if (job.command == "verma")
      o.status = detail::run_verma(job, os);
    else if (job.command == "weights")
      o.status = detail::run_weights(job, os);
    else if (job.command == "check")
      o.status = detail::run_check(job, os, rng);
    else if (job.command == "check-dgh")
      o.status = detail::run_check_dgh(job, os, rng);
    else if (job.command == "example" && job.example == "breuil")
      o.status = detail::run_example_breuil(job, os);
    else if (job.command == "example" && job.example == "schraen")
      o.status = detail::run_example_schraen(job, os, rng);
    else
      throw SchemaError("unknown command '" + job.command + (job.example.empty() ? "" : " " + job.example) + "'");
  } catch (const ParseError& e) {
    o.err = std::string(e.what()) + "\n";
    o.status = 2;
  } catch (const SchemaError& e) {
    o.err = std::string(e.what()) + "\n";
    o.status = 2;
  } catch (const std::exception& e) {
    o.err = std::string(e.what()) + "\n";
    o.status = 1;
  }
  o.out = os.str();
  return o;
}

}  // namespace loglift::cli
