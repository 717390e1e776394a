#pragma once

#include <map>
#include <vector>

#include "loglift/lift.hpp"

namespace loglift {

// Exponent vector over the negative roots, in PBW order.
using Monomial = std::vector<unsigned>;

inline std::size_t degree(const Monomial& m) {
  std::size_t d = 0;
  for (unsigned e : m) d += e;
  return d;
}

struct PartialAction {
  Matrix matrix;
  bool overflow = false;  // some image left the truncation and was dropped
};

// U(g) (x)_{U(p)} M cut off at degree N in U(u^-), with basis f^a (x) m_k.
class TruncatedInduced {
 public:
  static constexpr std::size_t kDefaultMaxBasis = 5000;

  TruncatedInduced(FdPModule base, std::size_t depth, std::size_t max_basis = kDefaultMaxBasis)
      : base_(std::move(base)), depth_(depth) {
    const GLnContext& ctx = base_.ctx();
    roots_ = ctx.negative_roots();
    std::stable_sort(roots_.begin(), roots_.end(), [](const Root& a, const Root& b) {
      return std::pair(a.i - a.j, std::pair(a.i, a.j)) < std::pair(b.i - b.j, std::pair(b.i, b.j));
    });
    for (std::size_t k = 0; k < roots_.size(); ++k) root_index_[roots_[k]] = k;
    std::size_t count = 0;
    enumerate(Monomial(roots_.size(), 0), 0, 0, count, max_basis);
    for (std::size_t k = 0; k < monomials_.size(); ++k) mono_index_[monomials_[k]] = k;
  }

  const FdPModule& base() const { return base_; }
  std::size_t depth() const { return depth_; }
  const std::vector<Root>& negative_roots() const { return roots_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  std::size_t dim() const { return monomials_.size() * base_.dim(); }
  std::size_t index(const Monomial& m, std::size_t k) const { return mono_index_.at(m) * base_.dim() + k; }

  // Weight shift of f^a, i.e. the sum of the negative roots in the monomial.
  std::vector<long> weight_shift(const Monomial& m) const {
    std::vector<long> w(base_.ctx().n(), 0);
    for (std::size_t k = 0; k < m.size(); ++k) {
      w[roots_[k].i] += m[k];
      w[roots_[k].j] -= m[k];
    }
    return w;
  }

  // Matrix of x in p on the truncation.
  Matrix p_action(const Root& x) const {
    if (!base_.ctx().in_parabolic(x.i, x.j)) throw NotInParabolic(root_name(x) + " is not in the parabolic");
    const Field& F = base_.field();
    std::size_t d = base_.dim();
    Matrix out(F, dim(), dim());
    for (std::size_t c = 0; c < monomials_.size(); ++c)
      for (const auto& [mono, op] : act(x, monomials_[c])) out.set_block(mono_index_.at(mono) * d, c * d, op);
    return out;
  }

  // Action of any root vector; negative ones may raise the degree past the cut.
  PartialAction g_action(const Root& x) const {
    if (base_.ctx().in_parabolic(x.i, x.j)) return {p_action(x), false};
    const Field& F = base_.field();
    std::size_t d = base_.dim();
    PartialAction out{Matrix(F, dim(), dim()), false};
    Matrix id = Matrix::identity(F, d);
    for (std::size_t c = 0; c < monomials_.size(); ++c)
      for (const auto& [mono, coeff] : left_mul(root_index_.at(x), monomials_[c])) {
        auto it = mono_index_.find(mono);
        if (it == mono_index_.end()) {
          out.overflow = true;
          continue;
        }
        out.matrix.set_block(it->second * d, c * d, Element::integer(F, coeff) * id);
      }
    return out;
  }

  // The truncation as a module over p.
  FdPModule as_module() const {
    std::map<Root, Matrix> action;
    for (const Root& r : base_.ctx().parabolic_roots()) action.emplace(r, p_action(r));
    return FdPModule(base_.ctx(), base_.field(), dim(), action);
  }

  // Weight decomposition read off from the base: f^a (x) M_lambda has weight
  // lambda + shift(a).
  PrimaryDecomposition weight_decomposition() const {
    PrimaryDecomposition base_dec = loglift::weight_decomposition(base_);
    const Field& F = base_.field();
    std::size_t d = base_.dim();
    std::map<std::vector<long>, std::vector<Matrix>> bases;
    std::map<std::vector<long>, Matrix> projectors;
    for (std::size_t c = 0; c < monomials_.size(); ++c) {
      std::vector<long> shift = weight_shift(monomials_[c]);
      for (const auto& comp : base_dec.components) {
        std::vector<long> w = comp.weight;
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += shift[i];
        Matrix b(F, dim(), comp.basis.cols());
        b.set_block(c * d, 0, comp.basis);
        bases[w].push_back(b);
        auto it = projectors.find(w);
        if (it == projectors.end()) it = projectors.emplace(w, Matrix(F, dim(), dim())).first;
        Matrix p = it->second;
        p.set_block(c * d, c * d, comp.projector);
        it->second = p;
      }
    }
    PrimaryDecomposition out;
    out.dim = dim();
    for (auto& [w, parts] : bases) out.components.push_back({w, hstack(parts, F, dim()), projectors.at(w)});
    return out;
  }

  std::map<std::vector<long>, std::size_t> weight_multiplicities() const {
    std::map<std::vector<long>, std::size_t> out;
    for (const auto& c : weight_decomposition().components) out[c.weight] = c.basis.cols();
    return out;
  }

 private:
  using ScalarCombo = std::map<Monomial, long>;
  using OperatorCombo = std::map<Monomial, Matrix>;

  void enumerate(Monomial m, std::size_t k, std::size_t deg, std::size_t& count, std::size_t max_basis) {
    if (k == roots_.size()) {
      if ((++count) * base_.dim() > max_basis)
        throw DepthOverflow("truncated module exceeds " + std::to_string(max_basis) + " basis vectors");
      monomials_.push_back(m);
      return;
    }
    for (std::size_t e = 0; deg + e <= depth_; ++e) {
      m[k] = static_cast<unsigned>(e);
      enumerate(m, k + 1, deg + e, count, max_basis);
    }
  }

  static std::size_t leading(const Monomial& m) {
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m[k]) return k;
    return m.size();
  }

  // The bracket [e_a, e_b] as a list of (coefficient, root); diagonal terms
  // appear as roots (i, i).
  static std::vector<std::pair<long, Root>> bracket(const Root& a, const Root& b) { return root_bracket(a, b); }

  // f_g * f^m in the PBW basis of U(u^-).
  const ScalarCombo& left_mul(std::size_t g, const Monomial& m) const {
    auto key = std::pair(g, m);
    auto it = mul_cache_.find(key);
    if (it != mul_cache_.end()) return it->second;
    ScalarCombo out;
    std::size_t b = leading(m);
    if (b >= g) {
      Monomial r = m;
      ++r[g];
      out[r] = 1;
    } else {
      // f_g f_b m' = f_b (f_g m') + [f_g, f_b] m'; every root in f_g m' is at
      // least f_b, since brackets only raise the height.
      Monomial rest = m;
      --rest[b];
      for (const auto& [mono, c] : left_mul(g, rest)) {
        Monomial r = mono;
        ++r[b];
        out[r] += c;
      }
      for (const auto& [c, root] : bracket(roots_[g], roots_[b]))
        for (const auto& [mono, c2] : left_mul(root_index_.at(root), rest)) out[mono] += c * c2;
    }
    for (auto i = out.begin(); i != out.end();) i = i->second == 0 ? out.erase(i) : std::next(i);
    return mul_cache_.emplace(key, std::move(out)).first->second;
  }

  // x (f^m (x) v) = sum over monomials f^a (x) op_a v.
  const OperatorCombo& act(const Root& x, const Monomial& m) const {
    auto key = std::pair(x, m);
    auto it = act_cache_.find(key);
    if (it != act_cache_.end()) return it->second;
    OperatorCombo out;
    std::size_t b = leading(m);
    auto add = [&out](const Monomial& mono, const Matrix& op) {
      auto j = out.find(mono);
      if (j == out.end())
        out.emplace(mono, op);
      else
        j->second += op;
    };
    if (b == m.size()) {
      add(m, base_.image(x));
    } else {
      // x f_b m' = f_b (x m') + [x, f_b] m'.
      Monomial rest = m;
      --rest[b];
      const Field& F = base_.field();
      for (const auto& [mono, op] : act(x, rest))
        for (const auto& [mono2, c] : left_mul(b, mono)) add(mono2, Element::integer(F, c) * op);
      for (const auto& [c, root] : bracket(x, roots_[b])) {
        Element ce = Element::integer(F, c);
        if (base_.ctx().in_parabolic(root.i, root.j)) {
          for (const auto& [mono, op] : act(root, rest)) add(mono, ce * op);
        } else {
          Matrix id = Matrix::identity(F, base_.dim());
          for (const auto& [mono, c2] : left_mul(root_index_.at(root), rest))
            add(mono, Element::integer(F, c * c2) * id);
        }
      }
    }
    for (auto i = out.begin(); i != out.end();) i = i->second.is_zero() ? out.erase(i) : std::next(i);
    return act_cache_.emplace(key, std::move(out)).first->second;
  }

  FdPModule base_;
  std::size_t depth_;
  std::vector<Root> roots_;
  std::map<Root, std::size_t> root_index_;
  std::vector<Monomial> monomials_;
  std::map<Monomial, std::size_t> mono_index_;
  mutable std::map<std::pair<std::size_t, Monomial>, ScalarCombo> mul_cache_;
  mutable std::map<std::pair<Root, Monomial>, OperatorCombo> act_cache_;
};

inline TruncatedInduced build_truncated(const FdPModule& m, std::size_t depth,
                                        std::size_t max_basis = TruncatedInduced::kDefaultMaxBasis) {
  return TruncatedInduced(m, depth, max_basis);
}

inline LiftedRep lift_truncation(const TruncatedInduced& t, const TorusLogarithm& log) {
  return LiftedRep(t.as_module(), log, t.weight_decomposition());
}

inline Matrix lift_on_truncation(const TruncatedInduced& t, const TorusLogarithm& log, const Matrix& g) {
  return lift_truncation(t, log).eval(g);
}

}  // namespace loglift
