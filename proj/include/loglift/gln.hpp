#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "loglift/linalg.hpp"

namespace loglift {

// A root vector e_ij of gl_n, 0-based.
struct Root {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const Root& a, const Root& b) { return a.i == b.i && a.j == b.j; }
  friend bool operator<(const Root& a, const Root& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); }
};

// GL_n together with a standard parabolic given by a composition of n.
class GLnContext {
 public:
  GLnContext() = default;
  explicit GLnContext(std::vector<std::size_t> composition) : composition_(std::move(composition)) {
    for (std::size_t b = 0; b < composition_.size(); ++b) {
      if (composition_[b] == 0) throw std::invalid_argument("composition parts must be positive");
      block_start_.push_back(n_);
      for (std::size_t k = 0; k < composition_[b]; ++k) block_of_.push_back(b);
      n_ += composition_[b];
    }
    if (n_ == 0) throw std::invalid_argument("empty composition");
  }

  static GLnContext borel(std::size_t n) { return GLnContext(std::vector<std::size_t>(n, 1)); }

  std::size_t n() const { return n_; }
  const std::vector<std::size_t>& composition() const { return composition_; }
  std::size_t num_blocks() const { return composition_.size(); }
  std::size_t block_of(std::size_t i) const { return block_of_[i]; }
  std::size_t block_start(std::size_t b) const { return block_start_[b]; }
  std::size_t block_size(std::size_t b) const { return composition_[b]; }
  bool is_borel() const { return composition_.size() == n_; }

  bool in_parabolic(std::size_t i, std::size_t j) const { return block_of_[i] <= block_of_[j]; }
  bool in_unipotent(std::size_t i, std::size_t j) const { return block_of_[i] < block_of_[j]; }
  bool in_levi(std::size_t i, std::size_t j) const { return block_of_[i] == block_of_[j]; }

  std::vector<Root> all_roots() const { return collect([](std::size_t, std::size_t) { return true; }); }
  std::vector<Root> parabolic_roots() const {
    return collect([this](std::size_t i, std::size_t j) { return in_parabolic(i, j); });
  }
  std::vector<Root> unipotent_roots() const {
    return collect([this](std::size_t i, std::size_t j) { return in_unipotent(i, j); });
  }
  std::vector<Root> levi_roots() const {
    return collect([this](std::size_t i, std::size_t j) { return i != j && in_levi(i, j); });
  }
  std::vector<Root> negative_roots() const {
    return collect([this](std::size_t i, std::size_t j) { return block_of_[i] > block_of_[j]; });
  }

  friend bool operator==(const GLnContext& a, const GLnContext& b) { return a.composition_ == b.composition_; }

 private:
  template <class Pred>
  std::vector<Root> collect(Pred pred) const {
    std::vector<Root> out;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (pred(i, j)) out.push_back({i, j});
    return out;
  }

  std::vector<std::size_t> composition_;
  std::vector<std::size_t> block_of_;
  std::vector<std::size_t> block_start_;
  std::size_t n_ = 0;
};

inline Matrix ad_action(const Matrix& g, const Matrix& x) { return g * x * inverse(g); }

inline bool is_in_parabolic(const Matrix& g, const GLnContext& ctx) {
  for (std::size_t i = 0; i < ctx.n(); ++i)
    for (std::size_t j = 0; j < ctx.n(); ++j)
      if (!ctx.in_parabolic(i, j) && !g(i, j).is_zero()) return false;
  return true;
}

inline bool is_in_unipotent_radical(const Matrix& u, const GLnContext& ctx) {
  for (std::size_t i = 0; i < ctx.n(); ++i)
    for (std::size_t j = 0; j < ctx.n(); ++j) {
      if (ctx.in_unipotent(i, j)) continue;
      const Element& x = u(i, j);
      bool ok = (i == j) ? (x - Element::one(u.field())).is_zero() : x.is_zero();
      if (!ok) return false;
    }
  return true;
}

inline Matrix levi_part(const Matrix& g, const GLnContext& ctx) {
  Matrix l(g.field(), ctx.n(), ctx.n());
  for (std::size_t i = 0; i < ctx.n(); ++i)
    for (std::size_t j = 0; j < ctx.n(); ++j)
      if (ctx.in_levi(i, j)) l(i, j) = g(i, j);
  return l;
}

struct ParabolicFactors {
  Matrix unipotent;
  Matrix levi;
};

enum class FactorOrder { UnipotentFirst, LeviFirst };

// g = u * l (UnipotentFirst) or g = l * u (LeviFirst) with u in the unipotent
// radical and l block diagonal.
inline ParabolicFactors factor_parabolic(const Matrix& g, const GLnContext& ctx,
                                         FactorOrder order = FactorOrder::UnipotentFirst) {
  if (g.rows() != ctx.n() || !g.is_square()) throw DimensionMismatch("group element has the wrong size");
  if (!is_in_parabolic(g, ctx)) throw NotInParabolic("matrix has non-zero entries below the block diagonal");
  const Field& F = g.field();
  std::size_t n = ctx.n();
  Matrix l = levi_part(g, ctx);
  Matrix linv = inverse(l);
  Matrix x(F, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (ctx.in_unipotent(i, j)) x(i, j) = g(i, j);
  Matrix y = order == FactorOrder::UnipotentFirst ? x * linv : linv * x;
  Matrix u = Matrix::identity(F, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (ctx.in_unipotent(i, j)) u(i, j) = y(i, j);
  return {u, l};
}

struct LeviFactors {
  Matrix torus;    // diag(det l_1, 1, ..., 1, det l_2, 1, ...)
  Matrix derived;  // block diagonal with determinant one in every block
};

inline LeviFactors factor_levi(const Matrix& l, const GLnContext& ctx) {
  const Field& F = l.field();
  std::size_t n = ctx.n();
  Matrix t = Matrix::identity(F, n);
  Matrix h = l;
  for (std::size_t b = 0; b < ctx.num_blocks(); ++b) {
    std::size_t s = ctx.block_start(b), m = ctx.block_size(b);
    Element d = determinant(l.block(s, s, m, m));
    if (d.is_zero()) throw SingularMatrix("Levi block is singular at the available precision");
    t(s, s) = d;
    Element dinv = d.inverse();
    for (std::size_t j = s; j < s + m; ++j) h(s, j) = dinv * l(s, j);
  }
  return {t, h};
}

struct Transvection {
  std::size_t i = 0;
  std::size_t j = 0;
  Element coeff;
};

using TransvectionWord = std::vector<Transvection>;

enum class PivotRule { MinValuation, FirstNonzero, LastNonzero };

namespace detail {

inline void add_row_multiple(Matrix& h, std::size_t target, std::size_t source, const Element& c,
                             std::vector<Transvection>& ops) {
  for (std::size_t k = 0; k < h.cols(); ++k)
    if (!h(source, k).is_exact_zero()) h(target, k) += c * h(source, k);
  ops.push_back({target, source, c});
}

inline std::size_t choose_pivot(const Matrix& h, std::size_t col, std::size_t from, PivotRule rule) {
  std::size_t n = h.rows(), best = n;
  for (std::size_t i = from; i < n; ++i) {
    if (h(i, col).is_zero()) continue;
    switch (rule) {
      case PivotRule::MinValuation:
        if (best == n || h(i, col).scaled_valuation() < h(best, col).scaled_valuation()) best = i;
        break;
      case PivotRule::FirstNonzero:
        if (best == n) best = i;
        break;
      case PivotRule::LastNonzero:
        best = i;
        break;
    }
  }
  return best;
}

}  // namespace detail

// Writes h in SL_n as a product of elementary matrices I + a e_ij (i != j);
// the word lists the factors from left to right.
inline TransvectionWord transvection_factor(const Matrix& h, PivotRule rule = PivotRule::MinValuation) {
  if (!h.is_square()) throw DimensionMismatch("transvection factorisation needs a square matrix");
  const Field& F = h.field();
  std::size_t n = h.rows();
  Element det = determinant(h);
  Rational need = std::min(det.precision(), Rational(F.cap())) - 2;
  if (!det.agrees_with(Element::one(F), need)) throw NotSpecialLinear("determinant is not one");
  Matrix m = h;
  std::vector<Transvection> ops;
  const Element one = Element::one(F);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    std::size_t r = detail::choose_pivot(m, j, j, rule);
    if (r == n) throw PrecisionLoss("column has no usable pivot");
    if (!(m(j, j) - one).is_zero()) {
      std::size_t k = r;
      if (k == j) {
        k = detail::choose_pivot(m, j, j + 1, rule);
        if (k == n) {
          detail::add_row_multiple(m, j + 1, j, one, ops);
          k = j + 1;
        }
      }
      detail::add_row_multiple(m, j, k, (one - m(j, j)) / m(k, j), ops);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j || m(i, j).is_zero()) continue;
      detail::add_row_multiple(m, i, j, -m(i, j), ops);
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (m(i, n - 1).is_zero()) continue;
    detail::add_row_multiple(m, i, n - 1, -m(i, n - 1), ops);
  }
  TransvectionWord word;
  for (const auto& op : ops) word.push_back({op.i, op.j, -op.coeff});
  return word;
}

// Factorisation of a block diagonal element with determinant one in each block;
// every letter lies in a root subgroup of the Levi.
inline TransvectionWord levi_transvection_word(const Matrix& h, const GLnContext& ctx,
                                               PivotRule rule = PivotRule::MinValuation) {
  TransvectionWord word;
  for (std::size_t b = 0; b < ctx.num_blocks(); ++b) {
    std::size_t s = ctx.block_start(b), m = ctx.block_size(b);
    if (m == 1) continue;
    for (auto& t : transvection_factor(h.block(s, s, m, m), rule)) word.push_back({t.i + s, t.j + s, t.coeff});
  }
  return word;
}

inline Matrix evaluate_word(const Field& F, std::size_t n, const TransvectionWord& word) {
  Matrix g = Matrix::identity(F, n);
  for (const auto& t : word) {
    // right multiplication by I + a e_ij adds a * (column i) to column j
    for (std::size_t r = 0; r < n; ++r)
      if (!g(r, t.i).is_exact_zero()) g(r, t.j) += t.coeff * g(r, t.i);
  }
  return g;
}

}  // namespace loglift
