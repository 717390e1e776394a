#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "loglift/matrix.hpp"

namespace loglift {

struct RowReduction {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form using, in each column, the pivot of least valuation.
// Entries indistinguishable from zero are never used as pivots.  Only the first
// `pivot_limit` columns are eligible for pivots.
inline RowReduction row_reduce(Matrix m, std::size_t pivot_limit = static_cast<std::size_t>(-1)) {
  const Field& F = m.field();
  std::size_t rows = m.rows(), cols = m.cols();
  pivot_limit = std::min(pivot_limit, cols);
  Rational scale = infinite_rational();
  for (const auto& x : m.data())
    if (!x.is_zero()) scale = std::min(scale, x.valuation());
  RowReduction out;
  std::size_t r = 0;
  for (std::size_t col = 0; col < pivot_limit && r < rows; ++col) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (m(i, col).is_zero()) continue;
      if (piv == rows || m(i, col).scaled_valuation() < m(piv, col).scaled_valuation()) piv = i;
    }
    if (piv == rows) {
      for (std::size_t i = r; i < rows; ++i)
        if (!is_infinite(scale) && m(i, col).precision() <= scale)
          throw PrecisionLoss("rank decision below the precision of the data");
      continue;
    }
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
    Element inv = m(r, col).inverse();
    m(r, col) = Element::one(F);
    for (std::size_t j = col + 1; j < cols; ++j)
      if (!m(r, j).is_exact_zero()) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, col).is_exact_zero()) continue;
      Element f = m(i, col);
      m(i, col) = Element::zero(F);
      for (std::size_t j = col + 1; j < cols; ++j)
        if (!m(r, j).is_exact_zero()) m(i, j) -= f * m(r, j);
    }
    out.pivot_cols.push_back(col);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const Matrix& a) { return row_reduce(a).pivot_cols.size(); }

// Basis of the right kernel, as the columns of the returned matrix.
inline Matrix kernel(const Matrix& a) {
  const Field& F = a.field();
  RowReduction rr = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : rr.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Matrix k(F, a.cols(), free_cols.size());
  for (std::size_t t = 0; t < free_cols.size(); ++t) {
    std::size_t f = free_cols[t];
    k(f, t) = Element::one(F);
    for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r) k(rr.pivot_cols[r], t) = -rr.reduced(r, f);
  }
  return k;
}

// Columns of `a` forming a basis of its column space.
inline Matrix column_space(const Matrix& a) { return a.select_columns(row_reduce(a).pivot_cols); }

// Solves a x = b for square invertible a.
inline Matrix solve(const Matrix& a, const Matrix& b) {
  if (!a.is_square() || a.rows() != b.rows()) throw DimensionMismatch("solve needs a square system");
  std::size_t n = a.rows();
  Matrix aug(a.field(), n, n + b.cols());
  aug.set_block(0, 0, a);
  aug.set_block(0, n, b);
  RowReduction rr = row_reduce(aug, n);
  if (rr.pivot_cols.size() != n) throw SingularMatrix("matrix is singular at the available precision");
  return rr.reduced.block(0, n, n, b.cols());
}

inline Matrix inverse(const Matrix& a) { return solve(a, Matrix::identity(a.field(), a.rows())); }

inline Element determinant(Matrix m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
  const Field& F = m.field();
  std::size_t n = m.rows();
  Element det = Element::one(F);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t i = col; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      if (piv == n || m(i, col).scaled_valuation() < m(piv, col).scaled_valuation()) piv = i;
    }
    if (piv == n) return det * m(col, col);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      det = -det;
    }
    det = det * m(col, col);
    Element inv = m(col, col).inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col).is_exact_zero()) continue;
      Element f = m(i, col) * inv;
      for (std::size_t j = col + 1; j < n; ++j)
        if (!m(col, j).is_exact_zero()) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

inline Element trace(const Matrix& m) {
  Element t = Element::zero(m.field());
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

// Matrix of a restricted to the a-stable column space of v (full column rank).
inline Matrix restrict_to_subspace(const Matrix& a, const Matrix& v) {
  std::vector<std::size_t> rows = row_reduce(v.transpose()).pivot_cols;
  if (rows.size() != v.cols()) throw SingularMatrix("subspace basis is not of full rank");
  return solve(v.select_rows(rows), (a * v).select_rows(rows));
}

// exp(N) for nilpotent N as a finite sum.
inline Matrix nilpotent_exp(const Matrix& n) {
  const Field& F = n.field();
  std::size_t d = n.rows();
  Matrix sum = Matrix::identity(F, d);
  Matrix term = n;
  for (long k = 1;; ++k) {
    if (term.is_zero()) {
      sum += term;
      break;
    }
    if (static_cast<std::size_t>(k) > d) throw NotNilpotent("matrix is not nilpotent at the available precision");
    sum += term;
    term = Element::rational(F, mpz_class(1), mpz_class(k + 1)) * (term * n);
  }
  return sum;
}

// log(U) for unipotent U as a finite sum.
inline Matrix unipotent_log(const Matrix& u) {
  const Field& F = u.field();
  std::size_t d = u.rows();
  Matrix x = u - Matrix::identity(F, d);
  Matrix sum(F, d, d);
  Matrix power = x;
  for (long k = 1;; ++k) {
    if (power.is_zero()) {
      sum += power;
      break;
    }
    if (static_cast<std::size_t>(k) > d) throw NotUnipotent("matrix is not unipotent at the available precision");
    sum += Element::rational(F, mpz_class(k % 2 ? 1 : -1), mpz_class(k)) * power;
    power = power * x;
  }
  return sum;
}

// exp(A) by its power series; needs every entry of A to have valuation > 1/(p-1).
inline Matrix exp_series(const Matrix& a) {
  const Field& F = a.field();
  long p = F.prime();
  Matrix x = a;
  for (auto& e : x.data()) e = e.capped();
  Rational v = x.min_valuation();
  std::size_t d = a.rows();
  if (is_infinite(v) || x.is_zero()) return Matrix::identity(F, d) + x;
  if (v * (p - 1) <= 1) throw OutsideConvergenceDomain("matrix exponential needs entries of valuation > 1/(p-1)");
  Rational n_prec = x.min_precision();
  Matrix sum = Matrix::identity(F, d) + x;
  Matrix term = x;
  for (long n = 2;; ++n) {
    Rational bound = Rational(n) * v - Rational(n - 1, p - 1);
    if (bound >= n_prec) break;
    term = Element::rational(F, mpz_class(1), mpz_class(n)) * (term * x);
    sum += term;
  }
  return sum.with_precision(n_prec);
}

// Integer represented by a p-adic value, choosing the representative of least
// absolute value modulo the known precision.
inline std::optional<long> symmetric_integer(const Element& x) {
  if (!x.is_base()) return std::nullopt;
  const Padic& a = x.coefficient(0);
  if (a.is_zero()) return 0;
  if (a.valuation() < 0) return std::nullopt;
  mpz_class value;
  if (a.is_exact()) {
    if (!a.is_integral_exact()) return std::nullopt;
    value = a.unit() * a.context().power(a.valuation());
  } else {
    const mpz_class& mod = a.context().power(a.precision());
    value = a.residue(a.precision());
    if (2 * value > mod) value -= mod;
  }
  if (!value.fits_slong_p()) return std::nullopt;
  return value.get_si();
}

struct WeightComponent {
  std::vector<long> weight;
  Matrix basis;
  Matrix projector;
};

struct PrimaryDecomposition {
  std::size_t dim = 0;
  std::vector<WeightComponent> components;

  std::size_t multiplicity(const std::vector<long>& w) const {
    for (const auto& c : components)
      if (c.weight == w) return c.basis.cols();
    return 0;
  }
};

inline long default_weight_box(const std::vector<Matrix>& family) {
  long bound = 0;
  std::size_t d = family.empty() ? 0 : family[0].rows();
  for (const auto& a : family) {
    auto t = symmetric_integer(trace(a));
    if (t) bound = std::max(bound, std::labs(*t));
  }
  return std::min<long>(2 * static_cast<long>(d) + bound, 100000);
}

// Simultaneous generalised eigenspace decomposition of a commuting family
// whose eigenvalues are integers in [-box, box].
inline PrimaryDecomposition primary_decomposition(const std::vector<Matrix>& family, long box = -1) {
  if (family.empty()) throw std::invalid_argument("empty operator family");
  const Field& F = family[0].field();
  std::size_t d = family[0].rows();
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (!commutator(family[i], family[j]).is_zero())
        throw NotCommuting("operators " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
  if (box < 0) box = default_weight_box(family);

  struct Piece {
    std::vector<long> weight;
    Matrix basis;
  };
  std::vector<Piece> pieces = {{{}, Matrix::identity(F, d)}};
  for (const auto& a : family) {
    std::vector<Piece> next;
    for (const auto& piece : pieces) {
      std::size_t k = piece.basis.cols();
      Matrix r = restrict_to_subspace(a, piece.basis);
      std::size_t found = 0;
      for (long lambda = -box; lambda <= box && found < k; ++lambda) {
        Matrix shifted = r - Element::integer(F, lambda) * Matrix::identity(F, k);
        if (kernel(shifted).cols() == 0) continue;
        Matrix gen = kernel(power(shifted, static_cast<long>(k)));
        if (gen.cols() == 0) continue;
        std::vector<long> w = piece.weight;
        w.push_back(lambda);
        next.push_back({w, piece.basis * gen});
        found += gen.cols();
      }
      if (found != k) throw NotSplitInBox("eigenvalues are not all integers in [-" + std::to_string(box) + ", " + std::to_string(box) + "]");
    }
    pieces = std::move(next);
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) { return x.weight < y.weight; });

  std::vector<Matrix> bases;
  for (const auto& piece : pieces) bases.push_back(piece.basis);
  Matrix full = hstack(bases, F, d);
  Matrix full_inv = inverse(full);
  PrimaryDecomposition out;
  out.dim = d;
  std::size_t offset = 0;
  for (auto& piece : pieces) {
    std::size_t k = piece.basis.cols();
    Matrix proj = piece.basis * full_inv.block(offset, 0, k, d);
    out.components.push_back({piece.weight, piece.basis, proj});
    offset += k;
  }
  return out;
}

// Semisimple part of each operator: sum over components of weight * projector.
inline std::vector<Matrix> semisimple_parts(const std::vector<Matrix>& family, const PrimaryDecomposition& dec) {
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Field& F = family[i].field();
    Matrix s(F, dec.dim, dec.dim);
    for (const auto& c : dec.components) s += Element::integer(F, c.weight[i]) * c.projector;
    out.push_back(s);
  }
  return out;
}

inline std::vector<Matrix> nilpotent_parts(const std::vector<Matrix>& family, const PrimaryDecomposition& dec) {
  std::vector<Matrix> s = semisimple_parts(family, dec);
  for (std::size_t i = 0; i < family.size(); ++i) s[i] = family[i] - s[i];
  return s;
}

}  // namespace loglift
