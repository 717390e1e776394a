#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loglift/random.hpp"

namespace loglift {

// A vector space with compatible actions of the group P (through deltas) and
// of the Lie algebra p, given on root-vector generators.
struct DgHWitness {
  GLnContext ctx;
  const Field* field = nullptr;
  std::size_t dim = 0;
  std::function<Matrix(const Matrix&)> group;
  std::map<Root, Matrix> lie;

  Matrix lie_apply(const Matrix& x) const {
    Matrix out(*field, dim, dim);
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j) {
        if (x(i, j).is_exact_zero()) continue;
        auto it = lie.find({i, j});
        if (it == lie.end()) {
          if (x(i, j).is_zero()) continue;
          throw NotInParabolic("element has a component outside the acting subalgebra");
        }
        out += x(i, j) * it->second;
      }
    return out;
  }
};

// Finite E-linear combination of deltas at elements of P.
struct GroupRingElement {
  std::vector<std::pair<Element, Matrix>> terms;

  Matrix act(const DgHWitness& w) const {
    Matrix out(*w.field, w.dim, w.dim);
    for (const auto& [c, h] : terms) out += c * w.group(h);
    return out;
  }
};

inline DgHWitness witness_from_lift(const LiftedRep& rep) {
  return {rep.ctx(), &rep.field(), rep.dim(), [rep](const Matrix& h) { return rep.eval(h); }, rep.module().images()};
}

// One-dimensional witness on which p acts trivially and P through a character.
inline DgHWitness character_witness(const SmoothCharacter& chi, const GLnContext& ctx, const Field& F) {
  std::map<Root, Matrix> lie;
  for (const Root& r : ctx.parabolic_roots()) lie.emplace(r, Matrix(F, 1, 1));
  return {ctx, &F, 1, [chi, &F](const Matrix& h) { return Matrix::diagonal(F, {chi.evaluate(h)}); }, lie};
}

inline DgHWitness trivial_witness(const GLnContext& ctx, const Field& F) {
  return character_witness(SmoothCharacter(ctx, F, std::vector<long>(ctx.num_blocks(), 0)), ctx, F);
}

// delta_h (x) x  ->  Ad(h)(x) (x) delta_h.
inline std::pair<Matrix, Matrix> zeta_ad_delta(const Matrix& h, const Matrix& x) { return {ad_action(h, x), h}; }

// Coordinates of Ad(h)(x) in the basis e_ij.
inline std::map<Root, Element> ad_expansion(const Matrix& h, const Matrix& x) {
  Matrix a = ad_action(h, x);
  std::map<Root, Element> out;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_exact_zero()) out.emplace(Root{i, j}, a(i, j));
  return out;
}

struct DgHViolation {
  std::size_t sample = 0;
  Root generator;
  std::size_t basis_vector = 0;
  Rational agreement;
};

struct DgHReport {
  std::size_t checks = 0;
  std::vector<DgHViolation> violations;
  bool passed() const { return violations.empty(); }
};

namespace detail {

// Digits of agreement of column k, measured against the size of both matrices.
inline Rational column_agreement(const Matrix& a, const Matrix& b, std::size_t k) {
  Rational scale = infinite_rational();
  for (const auto* m : {&a, &b})
    for (const auto& x : m->data())
      if (!x.is_zero()) scale = std::min(scale, x.valuation());
  Rational diff = (a.column(k) - b.column(k)).min_valuation();
  if (is_infinite(diff)) return infinite_rational();
  if (is_infinite(scale)) scale = 0;
  return diff - scale;
}

}  // namespace detail

// Samples (h, x, m) and checks delta_h (x m) = Ad(h)(x) (delta_h m) to
// `digits - slack` digits; `digits` defaults to the precision cap.
inline DgHReport check_dgh_compatibility(const DgHWitness& w, std::size_t samples, Rng& rng, long slack = 4,
                                         std::optional<long> digits = {}) {
  DgHReport report;
  const Field& F = *w.field;
  std::vector<Root> gens;
  for (const auto& [r, m] : w.lie) gens.push_back(r);
  Rational need = digits.value_or(F.cap()) - slack;
  for (std::size_t s = 0; s < samples; ++s) {
    Matrix h = random_parabolic(w.ctx, F, rng);
    const Root& r = gens[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(gens.size()) - 1))];
    std::size_t k = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(w.dim) - 1));
    Matrix x = Matrix::elementary(F, w.ctx.n(), r.i, r.j, Element::one(F));
    Matrix rh = w.group(h);
    Matrix lhs = rh * w.lie.at(r);
    Matrix rhs = w.lie_apply(ad_action(h, x)) * rh;
    Rational a = detail::column_agreement(lhs, rhs, k);
    ++report.checks;
    if (a < need) report.violations.push_back({s, r, k, a});
  }
  return report;
}

// The witness with the images of two generators exchanged.
inline DgHWitness corrupt_witness(DgHWitness w, const Root& a, const Root& b) {
  std::swap(w.lie.at(a), w.lie.at(b));
  return w;
}

// a (x) b with the diagonal group action and the Leibniz rule on p.
inline DgHWitness tensor_witness(const DgHWitness& a, const DgHWitness& b) {
  if (!(a.ctx == b.ctx)) throw DimensionMismatch("witnesses over different parabolics");
  if (a.field != b.field) throw FieldMismatch("witnesses over different fields");
  const Field& F = *a.field;
  Matrix ia = Matrix::identity(F, a.dim), ib = Matrix::identity(F, b.dim);
  std::map<Root, Matrix> lie;
  for (const auto& [r, m] : a.lie) lie.emplace(r, kron(m, ib) + kron(ia, b.lie.at(r)));
  auto ga = a.group, gb = b.group;
  return {a.ctx, &F, a.dim * b.dim, [ga, gb](const Matrix& h) { return kron(ga(h), gb(h)); }, lie};
}

inline DgHWitness tensor_dgh(const LiftedRep& m, const DgHWitness& x) { return tensor_witness(witness_from_lift(m), x); }

// Hom(m, x) with (delta_h s)(v) = delta_h s(h^-1 v) and (X s)(v) = X s(v) - s(X v).
// A map s is stored row-major as a vector of length dim x * dim m.
inline DgHWitness hom_witness(const DgHWitness& m, const DgHWitness& x) {
  if (!(m.ctx == x.ctx)) throw DimensionMismatch("witnesses over different parabolics");
  const Field& F = *m.field;
  Matrix im = Matrix::identity(F, m.dim), ix = Matrix::identity(F, x.dim);
  std::map<Root, Matrix> lie;
  for (const auto& [r, a] : m.lie) lie.emplace(r, kron(x.lie.at(r), im) - kron(ix, a.transpose()));
  auto gm = m.group, gx = x.group;
  return {m.ctx, &F, m.dim * x.dim,
          [gm, gx](const Matrix& h) { return kron(gx(h), inverse(gm(h)).transpose()); }, lie};
}

// Counit m (x) Hom(m, x) -> x, v (x) s -> s(v).
inline Matrix counit_matrix(const Field& F, std::size_t dm, std::size_t dx) {
  Matrix e(F, dx, dm * dx * dm);
  for (std::size_t a = 0; a < dm; ++a)
    for (std::size_t r = 0; r < dx; ++r) e(r, a * dx * dm + r * dm + a) = Element::one(F);
  return e;
}

// Unit x -> Hom(m, m (x) x), y -> (v -> v (x) y).
inline Matrix unit_matrix(const Field& F, std::size_t dm, std::size_t dx) {
  Matrix eta(F, dm * dx * dm, dx);
  for (std::size_t y = 0; y < dx; ++y)
    for (std::size_t a = 0; a < dm; ++a) eta((a * dx + y) * dm + a, y) = Element::one(F);
  return eta;
}

struct AdjunctionReport {
  std::size_t checks = 0;
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

// Checks that the counit and unit intertwine sampled group ring elements and
// every generator of p, and that the Hom action matches its defining formula.
inline AdjunctionReport adjunction_check(const LiftedRep& rep, const DgHWitness& x, std::size_t samples, Rng& rng,
                                         long slack = 4, std::optional<long> digits = {}) {
  AdjunctionReport report;
  const Field& F = rep.field();
  DgHWitness m = witness_from_lift(rep);
  DgHWitness hom = hom_witness(m, x);
  DgHWitness source = tensor_witness(m, hom);
  DgHWitness target = hom_witness(m, tensor_witness(m, x));
  Matrix eps = counit_matrix(F, m.dim, x.dim);
  Matrix eta = unit_matrix(F, m.dim, x.dim);
  Rational need = digits.value_or(F.cap()) - slack;
  auto record = [&](const std::string& what, const Matrix& a, const Matrix& b) {
    ++report.checks;
    Rational ag = relative_agreement(a, b);
    if (ag < need) report.violations.push_back(what + " (agreement " + rational_str(ag) + ")");
  };
  for (std::size_t s = 0; s < samples; ++s) {
    GroupRingElement z;
    std::size_t terms = static_cast<std::size_t>(uniform(rng, 1, 3));
    for (std::size_t t = 0; t < terms; ++t)
      z.terms.push_back({Element::integer(F, uniform(rng, -5, 5)), random_parabolic(m.ctx, F, rng)});
    std::string tag = "sample " + std::to_string(s);
    record(tag + ": counit is E[H]-linear", eps * z.act(source), z.act(x) * eps);
    record(tag + ": unit is E[H]-linear", eta * z.act(x), z.act(target) * eta);
    const Matrix& h = z.terms[0].second;
    Matrix gm = m.group(h), gx = x.group(h), ghom = hom.group(h);
    Matrix gminv = inverse(gm);
    std::size_t dm = m.dim, dx = x.dim;
    Matrix direct(F, dx * dm, dx * dm);
    for (std::size_t r = 0; r < dx; ++r)
      for (std::size_t c = 0; c < dm; ++c) {
        Matrix sigma(F, dx, dm);
        sigma(r, c) = Element::one(F);
        Matrix img = gx * sigma * gminv;
        for (std::size_t i = 0; i < dx; ++i)
          for (std::size_t j = 0; j < dm; ++j) direct(i * dm + j, r * dm + c) = img(i, j);
      }
    record(tag + ": Hom action formula", ghom, direct);
  }
  for (const auto& [r, a] : m.lie) {
    record(root_name(r) + ": counit is p-linear", eps * source.lie.at(r), x.lie.at(r) * eps);
    record(root_name(r) + ": unit is p-linear", eta * x.lie.at(r), target.lie.at(r) * eta);
  }
  return report;
}

}  // namespace loglift
