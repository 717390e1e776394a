#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "loglift/gln.hpp"

namespace loglift {

// Finite-dimensional module over the parabolic subalgebra p (or all of gl_n),
// given by the images of the root vectors e_ij.
class FdPModule {
 public:
  FdPModule() = default;

  // Generators missing from `action` act by zero.  With full_algebra set, the
  // module carries an action of the whole of gl_n.
  FdPModule(GLnContext ctx, const Field& F, std::size_t dim, std::map<Root, Matrix> action, bool full_algebra = false)
      : ctx_(std::move(ctx)), field_(&F), dim_(dim), full_(full_algebra) {
    for (auto& [root, m] : action) {
      if (root.i >= ctx_.n() || root.j >= ctx_.n()) throw SchemaError("generator index out of range");
      if (!full_ && !ctx_.in_parabolic(root.i, root.j))
        throw SchemaError("generator e_" + std::to_string(root.i + 1) + "_" + std::to_string(root.j + 1) +
                          " is not in the parabolic subalgebra");
      if (m.rows() != dim || m.cols() != dim) throw DimensionMismatch("generator image has the wrong size");
      if (&m.field() != &F) throw FieldMismatch("generator image over a different field");
    }
    for (const Root& r : generators()) {
      auto it = action.find(r);
      images_.emplace(r, it == action.end() ? Matrix(F, dim, dim) : it->second);
    }
  }

  const GLnContext& ctx() const { return ctx_; }
  const Field& field() const { return *field_; }
  std::size_t dim() const { return dim_; }
  bool is_full_algebra() const { return full_; }

  std::vector<Root> generators() const { return full_ ? ctx_.all_roots() : ctx_.parabolic_roots(); }
  bool acts(const Root& r) const { return images_.count(r) > 0; }

  const Matrix& image(const Root& r) const {
    auto it = images_.find(r);
    if (it == images_.end())
      throw std::out_of_range("module has no action of e_" + std::to_string(r.i + 1) + "_" + std::to_string(r.j + 1));
    return it->second;
  }
  const Matrix& image(std::size_t i, std::size_t j) const { return image(Root{i, j}); }

  // phi(x) for x in the subalgebra on which the module is defined.
  Matrix apply(const Matrix& x) const {
    Matrix out(*field_, dim_, dim_);
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j) {
        if (x(i, j).is_exact_zero()) continue;
        if (!acts({i, j})) {
          if (x(i, j).is_zero()) continue;
          throw NotInParabolic("element has a component outside the acting subalgebra");
        }
        out += x(i, j) * image(i, j);
      }
    return out;
  }

  std::vector<Matrix> torus_family() const {
    std::vector<Matrix> fam;
    for (std::size_t i = 0; i < ctx_.n(); ++i) fam.push_back(image(i, i));
    return fam;
  }

  const std::map<Root, Matrix>& images() const { return images_; }

 private:
  GLnContext ctx_;
  const Field* field_ = nullptr;
  std::size_t dim_ = 0;
  bool full_ = false;
  std::map<Root, Matrix> images_;
};

// [e_ij, e_kl] = delta_jk e_il - delta_li e_kj, as a list of (coefficient, root).
inline std::vector<std::pair<long, Root>> root_bracket(const Root& a, const Root& b) {
  std::vector<std::pair<long, Root>> out;
  if (a.j == b.i) out.push_back({1, {a.i, b.j}});
  if (b.j == a.i) out.push_back({-1, {b.i, a.j}});
  if (out.size() == 2 && out[0].second == out[1].second) out.clear();
  return out;
}

struct BracketViolation {
  Root a;
  Root b;
  Rational agreement;
};

struct LieHomReport {
  std::vector<BracketViolation> violations;
  bool valid() const { return violations.empty(); }
};

// Checks [phi(x), phi(y)] = phi([x, y]) on all pairs of generators.
inline LieHomReport check_lie_hom(const FdPModule& m, long slack = 2) {
  LieHomReport report;
  auto gens = m.generators();
  for (std::size_t s = 0; s < gens.size(); ++s)
    for (std::size_t t = s + 1; t < gens.size(); ++t) {
      const Root &a = gens[s], &b = gens[t];
      Matrix lhs = commutator(m.image(a), m.image(b));
      Matrix rhs(m.field(), m.dim(), m.dim());
      for (auto& [c, r] : root_bracket(a, b)) rhs += Element::integer(m.field(), c) * m.image(r);
      if (!approx_equal(lhs, rhs, slack)) report.violations.push_back({a, b, relative_agreement(lhs, rhs)});
    }
  return report;
}

inline PrimaryDecomposition weight_decomposition(const FdPModule& m, std::optional<long> box = std::nullopt) {
  return primary_decomposition(m.torus_family(), box ? *box : -1);
}

// Smallest k with a^k == 0 at the available precision, or nullopt.
inline std::optional<std::size_t> nilpotency_index(const Matrix& a) {
  Matrix p = Matrix::identity(a.field(), a.rows());
  for (std::size_t k = 0; k <= a.rows(); ++k) {
    if (p.is_zero()) return k;
    p = p * a;
  }
  return std::nullopt;
}

struct CategoryReport {
  bool split = false;
  bool algebraic_weights = false;
  bool unipotent_nilpotent = false;
  bool levi_roots_nilpotent = false;
  bool semidirect_sum_nilpotent = false;
  std::vector<std::pair<std::vector<long>, std::size_t>> weights;
  std::map<Root, std::size_t> nilpotency;
  std::size_t unipotent_depth = 0;
  std::string failure;

  bool member() const {
    return split && algebraic_weights && unipotent_nilpotent && levi_roots_nilpotent && semidirect_sum_nilpotent;
  }
};

// Smallest m with u^m M = 0, where u is the nilradical action.
inline std::optional<std::size_t> unipotent_depth(const FdPModule& m) {
  const Field& F = m.field();
  auto roots = m.ctx().unipotent_roots();
  Matrix span = Matrix::identity(F, m.dim());
  for (std::size_t k = 0; k <= m.dim(); ++k) {
    if (span.cols() == 0) return k;
    std::vector<Matrix> imgs;
    for (const Root& r : roots) imgs.push_back(m.image(r) * span);
    if (imgs.empty()) return k + 1;
    Matrix all = hstack(imgs, F, m.dim());
    span = all.is_zero() ? Matrix(F, m.dim(), 0) : column_space(all);
  }
  return std::nullopt;
}

inline CategoryReport category_membership(const FdPModule& m) {
  CategoryReport rep;
  try {
    PrimaryDecomposition dec = weight_decomposition(m);
    rep.split = true;
    rep.algebraic_weights = true;
    for (const auto& c : dec.components) rep.weights.push_back({c.weight, c.basis.cols()});
  } catch (const NotSplitInBox& e) {
    rep.failure = e.what();
  } catch (const NotCommuting& e) {
    rep.failure = e.what();
  }
  rep.unipotent_nilpotent = true;
  for (const Root& r : m.ctx().unipotent_roots()) {
    auto k = nilpotency_index(m.image(r));
    if (!k) {
      rep.unipotent_nilpotent = false;
      if (rep.failure.empty())
        rep.failure = "e_" + std::to_string(r.i + 1) + "_" + std::to_string(r.j + 1) + " does not act nilpotently";
    } else {
      rep.nilpotency[r] = *k;
    }
  }
  rep.levi_roots_nilpotent = true;
  for (const Root& r : m.ctx().levi_roots()) {
    auto k = nilpotency_index(m.image(r));
    if (!k) {
      rep.levi_roots_nilpotent = false;
      if (rep.failure.empty())
        rep.failure = "Levi root e_" + std::to_string(r.i + 1) + "_" + std::to_string(r.j + 1) + " does not act nilpotently";
    } else {
      rep.nilpotency[r] = *k;
    }
  }
  // For a Levi root x with x^(k) = 0 and u^(d) M = 0, every sum x + y with y in
  // u satisfies (x + y)^(k d) = 0.
  rep.semidirect_sum_nilpotent = rep.unipotent_nilpotent && rep.levi_roots_nilpotent;
  if (rep.semidirect_sum_nilpotent) {
    auto depth = unipotent_depth(m);
    rep.unipotent_depth = depth ? *depth : 0;
    const Field& F = m.field();
    Matrix usum(F, m.dim(), m.dim());
    long c = 1;
    for (const Root& r : m.ctx().unipotent_roots()) usum += Element::integer(F, c++) * m.image(r);
    for (const Root& r : m.ctx().levi_roots()) {
      std::size_t k = rep.nilpotency[r];
      long e = static_cast<long>(std::max<std::size_t>(k, 1) * std::max<std::size_t>(rep.unipotent_depth, 1));
      if (!power(m.image(r) + usum, e).is_zero()) {
        rep.semidirect_sum_nilpotent = false;
        if (rep.failure.empty()) rep.failure = "sum of a Levi root and the nilradical is not nilpotent";
      }
    }
  }
  return rep;
}

inline FdPModule trivial_module(const GLnContext& ctx, const Field& F, bool full = true) {
  return FdPModule(ctx, F, 1, {}, full);
}

inline FdPModule tensor_product(const FdPModule& a, const FdPModule& b) {
  if (!(a.ctx() == b.ctx())) throw DimensionMismatch("modules over different parabolics");
  bool full = a.is_full_algebra() && b.is_full_algebra();
  const Field& F = a.field();
  Matrix ia = Matrix::identity(F, a.dim()), ib = Matrix::identity(F, b.dim());
  std::map<Root, Matrix> act;
  for (const Root& r : (full ? a.ctx().all_roots() : a.ctx().parabolic_roots()))
    act.emplace(r, kron(a.image(r), ib) + kron(ia, b.image(r)));
  return FdPModule(a.ctx(), F, a.dim() * b.dim(), act, full);
}

inline FdPModule dual_module(const FdPModule& a) {
  std::map<Root, Matrix> act;
  for (const Root& r : a.generators()) act.emplace(r, -a.image(r).transpose());
  return FdPModule(a.ctx(), a.field(), a.dim(), act, a.is_full_algebra());
}

inline FdPModule direct_sum(const FdPModule& a, const FdPModule& b) {
  bool full = a.is_full_algebra() && b.is_full_algebra();
  std::map<Root, Matrix> act;
  for (const Root& r : (full ? a.ctx().all_roots() : a.ctx().parabolic_roots()))
    act.emplace(r, direct_sum(a.image(r), b.image(r)));
  return FdPModule(a.ctx(), a.field(), a.dim() + b.dim(), act, full);
}

// Module transported along the basis change v -> s v.
inline FdPModule conjugate(const FdPModule& a, const Matrix& s) {
  Matrix sinv = inverse(s);
  std::map<Root, Matrix> act;
  for (const Root& r : a.generators()) act.emplace(r, s * a.image(r) * sinv);
  return FdPModule(a.ctx(), a.field(), a.dim(), act, a.is_full_algebra());
}

// True when the column space of v is stable under every generator.
inline bool is_submodule(const FdPModule& a, const Matrix& v) {
  std::size_t k = v.cols();
  for (const Root& r : a.generators()) {
    Matrix img = a.image(r) * v;
    Matrix both = hstack({v, img}, a.field(), a.dim());
    if (rank(both) != k) return false;
  }
  return true;
}

inline FdPModule submodule(const FdPModule& a, const Matrix& v) {
  if (!is_submodule(a, v)) throw InvariantViolation("subspace is not stable under the action");
  std::map<Root, Matrix> act;
  for (const Root& r : a.generators()) act.emplace(r, restrict_to_subspace(a.image(r), v));
  return FdPModule(a.ctx(), a.field(), v.cols(), act, a.is_full_algebra());
}

// Quotient by the column space of v, in the basis of standard vectors
// complementing v.
inline FdPModule quotient_module(const FdPModule& a, const Matrix& v) {
  if (!is_submodule(a, v)) throw InvariantViolation("subspace is not stable under the action");
  const Field& F = a.field();
  std::size_t d = a.dim(), k = v.cols();
  Matrix ext = hstack({v, Matrix::identity(F, d)}, F, d);
  std::vector<std::size_t> piv = row_reduce(ext).pivot_cols;
  Matrix basis = ext.select_columns(piv);
  Matrix binv = inverse(basis);
  std::map<Root, Matrix> act;
  for (const Root& r : a.generators()) {
    Matrix full = binv * a.image(r) * basis;
    act.emplace(r, full.block(k, k, d - k, d - k));
  }
  return FdPModule(a.ctx(), F, d - k, act, a.is_full_algebra());
}

// Subspaces M_k = sum over weights of the kernels of (phi(x) - lambda(x))^k.
// They form an increasing chain of submodules with semisimple torus action on
// the successive quotients.
inline std::vector<Matrix> semisimple_filtration(const FdPModule& a) {
  const Field& F = a.field();
  PrimaryDecomposition dec = weight_decomposition(a);
  auto fam = a.torus_family();
  std::vector<Matrix> chain;
  for (std::size_t k = 1; k <= a.dim(); ++k) {
    std::vector<Matrix> parts;
    for (const auto& c : dec.components) {
      std::vector<Matrix> stacked;
      for (std::size_t i = 0; i < fam.size(); ++i) {
        Matrix shifted = fam[i] - Element::integer(F, c.weight[i]) * Matrix::identity(F, a.dim());
        stacked.push_back(power(shifted, static_cast<long>(k)) * c.basis);
      }
      Matrix big(F, fam.size() * a.dim(), c.basis.cols());
      for (std::size_t i = 0; i < stacked.size(); ++i) big.set_block(i * a.dim(), 0, stacked[i]);
      Matrix ker = kernel(big);
      if (ker.cols()) parts.push_back(c.basis * ker);
    }
    Matrix mk = parts.empty() ? Matrix(F, a.dim(), 0) : hstack(parts, F, a.dim());
    chain.push_back(mk);
    if (mk.cols() == a.dim()) break;
  }
  return chain;
}

inline std::string root_name(const Root& r) { return "e_" + std::to_string(r.i + 1) + "_" + std::to_string(r.j + 1); }

}  // namespace loglift
