#pragma once

#include <map>
#include <optional>
#include <vector>

#include "loglift/pmodule.hpp"
#include "loglift/torus_log.hpp"

namespace loglift {

// Character t -> prod_i t_i^{lambda_i} of the diagonal torus.
inline Element algebraic_character(const std::vector<long>& weight, const std::vector<Element>& t) {
  Element x = Element::one(t.at(0).field());
  for (std::size_t i = 0; i < weight.size(); ++i)
    if (weight[i] != 0) x = x * t[i].pow(weight[i]);
  return x;
}

// Lift of a module over a commuting family {phi(h_1), ..., phi(h_n)} to the
// torus: sum_lambda chi_lambda(t) P_lambda composed with exp(phi_n(log t)).
inline Matrix lift_torus_family(const PrimaryDecomposition& dec, const std::vector<Matrix>& nilpotent,
                                const TorusLogarithm& log, const std::vector<Element>& t) {
  const Field& F = log.field();
  Matrix chi(F, dec.dim, dec.dim);
  for (const auto& c : dec.components) chi += algebraic_character(c.weight, t) * c.projector;
  std::vector<Element> x = log.evaluate(t);
  Matrix n(F, dec.dim, dec.dim);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!nilpotent[i].is_zero()) n += x[i] * nilpotent[i];
  if (n.is_zero()) return chi + n;
  return chi * nilpotent_exp(n);
}

class LiftedRep {
 public:
  LiftedRep() = default;

  LiftedRep(FdPModule module, TorusLogarithm log, std::optional<PrimaryDecomposition> decomposition = std::nullopt)
      : module_(std::move(module)), log_(std::move(log)) {
    const Field& F = module_.field();
    if (&log_.field() != &F) throw FieldMismatch("logarithm and module use different coefficient fields");
    if (log_.rank() != module_.ctx().n()) throw DimensionMismatch("logarithm rank differs from n");
    for (const Root& r : module_.ctx().unipotent_roots())
      if (!nilpotency_index(module_.image(r)))
        throw NotNilpotentAction(root_name(r) + " does not act nilpotently");
    for (const Root& r : module_.ctx().levi_roots()) {
      auto k = nilpotency_index(module_.image(r));
      if (!k) throw NotNilpotentAction("Levi root " + root_name(r) + " does not act nilpotently");
      std::vector<Matrix> terms;
      Matrix term = Matrix::identity(F, module_.dim());
      for (std::size_t e = 0; e < *k; ++e) {
        terms.push_back(term);
        term = Element::rational(F, mpz_class(1), mpz_class(static_cast<long>(e + 1))) * (term * module_.image(r));
      }
      exp_terms_.emplace(r, std::move(terms));
    }
    dec_ = decomposition ? std::move(*decomposition) : weight_decomposition(module_);
    auto fam = module_.torus_family();
    semisimple_ = semisimple_parts(fam, dec_);
    for (std::size_t i = 0; i < fam.size(); ++i) nilpotent_.push_back(fam[i] - semisimple_[i]);
    check_log_compatibility();
  }

  const FdPModule& module() const { return module_; }
  const TorusLogarithm& log() const { return log_; }
  const GLnContext& ctx() const { return module_.ctx(); }
  const Field& field() const { return module_.field(); }
  std::size_t dim() const { return module_.dim(); }
  const PrimaryDecomposition& decomposition() const { return dec_; }
  const std::vector<Matrix>& semisimple() const { return semisimple_; }
  const std::vector<Matrix>& nilpotent() const { return nilpotent_; }

  Matrix phi(const Matrix& x) const { return module_.apply(x); }

  Matrix nilpotent_of(const std::vector<Element>& x) const {
    Matrix n(field(), dim(), dim());
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!nilpotent_[i].is_zero()) n += x[i] * nilpotent_[i];
    return n;
  }

  Matrix character(const std::vector<Element>& t) const {
    Matrix chi(field(), dim(), dim());
    for (const auto& c : dec_.components) chi += algebraic_character(c.weight, t) * c.projector;
    return chi;
  }

  Matrix eval_torus(const std::vector<Element>& t) const {
    return lift_torus_family(dec_, nilpotent_, log_, t);
  }
  Matrix eval_torus(const Matrix& t) const {
    if (!t.is_diagonal()) throw std::domain_error("torus element must be diagonal");
    return eval_torus(t.diagonal_entries());
  }

  Matrix eval_unipotent(const Matrix& u) const {
    if (!is_in_unipotent_radical(u, ctx())) throw NotInParabolic("element is not in the unipotent radical");
    Matrix x = unipotent_log(u);
    Matrix n(field(), dim(), dim());
    for (const Root& r : ctx().unipotent_roots())
      if (!x(r.i, r.j).is_exact_zero()) n += x(r.i, r.j) * module_.image(r);
    try {
      return nilpotent_exp(n);
    } catch (const NotNilpotent&) {
      throw NotNilpotentAction("the nilradical does not act nilpotently");
    }
  }

  // exp(a phi(e_ij)) for a Levi root.
  Matrix root_exp(const Root& r, const Element& a) const {
    const auto& terms = exp_terms_.at(r);
    Matrix out = terms[0];
    Element ak = a;
    for (std::size_t k = 1; k < terms.size(); ++k) {
      out += ak * terms[k];
      ak = ak * a;
    }
    return out;
  }

  Matrix eval_word(const TransvectionWord& word) const {
    Matrix out = Matrix::identity(field(), dim());
    for (const auto& t : word) out = out * root_exp({t.i, t.j}, t.coeff);
    return out;
  }

  Matrix eval_levi(const Matrix& l, PivotRule rule = PivotRule::MinValuation) const {
    LeviFactors f = factor_levi(l, ctx());
    TransvectionWord word = levi_transvection_word(f.derived, ctx(), rule);
    return eval_torus(f.torus) * eval_word(word);
  }

  Matrix eval(const Matrix& g, PivotRule rule = PivotRule::MinValuation,
              FactorOrder order = FactorOrder::UnipotentFirst) const {
    ParabolicFactors f = factor_parabolic(g, ctx(), order);
    if (order == FactorOrder::UnipotentFirst) return eval_unipotent(f.unipotent) * eval_levi(f.levi, rule);
    return eval_levi(f.levi, rule) * eval_unipotent(f.unipotent);
  }

 private:
  // On T' = T intersected with the derived Levi the lift must agree with the
  // algebraic action, which forces phi_n(D (e_i - e_j)) = 0 inside each block.
  void check_log_compatibility() const {
    Matrix d = log_.valuation_form();
    const GLnContext& c = ctx();
    for (std::size_t b = 0; b < c.num_blocks(); ++b) {
      std::size_t s = c.block_start(b);
      for (std::size_t k = 1; k < c.block_size(b); ++k) {
        std::vector<Element> x;
        for (std::size_t i = 0; i < c.n(); ++i) x.push_back(d(i, s) - d(i, s + k));
        Matrix n = nilpotent_of(x);
        if (!n.is_zero())
          throw IncompatibleLogarithm("the logarithm is not trivial on the derived Levi for this module");
      }
    }
  }

  FdPModule module_;
  TorusLogarithm log_;
  PrimaryDecomposition dec_;
  std::vector<Matrix> semisimple_;
  std::vector<Matrix> nilpotent_;
  std::map<Root, std::vector<Matrix>> exp_terms_;
};

inline Matrix lift_unipotent_eval(const LiftedRep& rep, const Matrix& u) { return rep.eval_unipotent(u); }
inline Matrix lift_torus_eval(const LiftedRep& rep, const Matrix& t) { return rep.eval_torus(t); }
inline Matrix lift_levi_eval(const LiftedRep& rep, const Matrix& l, PivotRule rule = PivotRule::MinValuation) {
  return rep.eval_levi(l, rule);
}
inline Matrix lift_parabolic_eval(const LiftedRep& rep, const Matrix& g, PivotRule rule = PivotRule::MinValuation) {
  return rep.eval(g, rule);
}

// Smooth character g -> sqrt(p)^(sum_b e_b v(det g_b)) of the parabolic.
class SmoothCharacter {
 public:
  SmoothCharacter(const GLnContext& ctx, const Field& F, std::vector<long> sqrt_p_exponents)
      : ctx_(ctx), field_(&F), e_(std::move(sqrt_p_exponents)) {
    if (e_.size() != ctx_.num_blocks()) throw DimensionMismatch("one exponent is needed per Levi block");
    for (long e : e_)
      if (e % 2 != 0 && !F.has_sqrt_p())
        throw MissingSqrtP("the character needs a square root of p in the coefficient field");
  }

  // g -> |det g|^{-(k-2)/2}.
  static SmoothCharacter alpha(const GLnContext& ctx, const Field& F, long k) {
    return SmoothCharacter(ctx, F, std::vector<long>(ctx.num_blocks(), k - 2));
  }

  const std::vector<long>& exponents() const { return e_; }

  Element evaluate(const Matrix& g) const {
    const Field& F = *field_;
    long total = 0;
    for (std::size_t b = 0; b < ctx_.num_blocks(); ++b) {
      std::size_t s = ctx_.block_start(b), m = ctx_.block_size(b);
      Element d = determinant(g.block(s, s, m, m));
      if (d.is_zero()) throw SingularMatrix("Levi block is singular");
      total += e_[b] * (d.scaled_valuation() / F.ramification());
    }
    if (total % 2 == 0) return Element::integer(F, F.prime()).pow(total / 2);
    return Element::sqrt_p(F).pow(total);
  }

 private:
  GLnContext ctx_;
  const Field* field_;
  std::vector<long> e_;
};

inline Matrix smooth_twist(const Matrix& value, const SmoothCharacter& alpha, const Matrix& g) {
  return alpha.evaluate(g) * value;
}

// For a second logarithm, the torus lift changes by exp(phi_n(log' t - log t)).
inline Matrix change_log_factor(const LiftedRep& rep, const TorusLogarithm& log2, const std::vector<Element>& t,
                                long slack = 4) {
  LogDifference eps = log_difference(log2, rep.log());
  Matrix factor = nilpotent_exp(rep.nilpotent_of(eps.apply(valuation_vector(t))));
  LiftedRep other(rep.module(), log2, rep.decomposition());
  Matrix lhs = other.eval_torus(t);
  Matrix rhs = rep.eval_torus(t) * factor;
  if (!approx_equal(lhs, rhs, slack)) throw InvariantViolation("change of logarithm formula failed");
  return factor;
}

}  // namespace loglift
