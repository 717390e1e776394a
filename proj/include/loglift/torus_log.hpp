#pragma once

#include <vector>

#include "loglift/analytic.hpp"
#include "loglift/linalg.hpp"

namespace loglift {

inline std::vector<std::vector<mpq_class>> rational_inverse(const IntMatrix& a) {
  std::size_t n = a.size();
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw DimensionMismatch("basis matrix must be square");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw SingularMatrix("basis matrix is not invertible over Q");
    std::swap(m[piv], m[c]);
    mpq_class inv = 1 / m[c][c];
    for (auto& x : m[c]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      mpq_class f = m[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  std::vector<std::vector<mpq_class>> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].assign(m[i].begin() + static_cast<long>(n), m[i].end());
  return out;
}

inline std::vector<long> valuation_vector(const std::vector<Element>& t) {
  std::vector<long> v;
  for (const auto& x : t) {
    if (!x.is_base()) throw std::domain_error("torus coordinates must lie in Q_p");
    if (x.is_zero()) throw DivisionByIndistinguishableZero("torus coordinate indistinguishable from zero");
    v.push_back(x.coefficient(0).valuation());
  }
  return v;
}

// A logarithm on the diagonal torus of GL_n(Q_p): x -> A^{-1} (log_{L_i}(prod_j x_j^{A_ij}))_i,
// plus an optional term linear in the valuations of the coordinates.
class TorusLogarithm {
 public:
  TorusLogarithm() = default;
  TorusLogarithm(const Field& F, IntMatrix a, std::vector<Element> branches, std::optional<Matrix> shift = std::nullopt)
      : field_(&F), a_(std::move(a)), branches_(std::move(branches)) {
    std::size_t n = a_.size();
    if (branches_.size() != n) throw DimensionMismatch("one branch is needed per basis vector");
    for (auto& b : branches_) {
      if (&b.field() != &F) throw FieldMismatch("branch over a different field");
    }
    auto inv = rational_inverse(a_);
    ainv_ = Matrix(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ainv_(i, j) = Element::rational(F, inv[i][j].get_num(), inv[i][j].get_den());
    shift_ = shift ? *shift : Matrix(F, n, n);
    if (shift_.rows() != n || shift_.cols() != n) throw DimensionMismatch("shift matrix has the wrong size");
  }

  static TorusLogarithm standard(const Field& F, const std::vector<Element>& branches) {
    std::size_t n = branches.size();
    IntMatrix id(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return TorusLogarithm(F, id, branches);
  }

  const Field& field() const { return *field_; }
  std::size_t rank() const { return a_.size(); }

  // Logarithms are evaluated with this many digits beyond the cap.
  long guard_digits() const { return guard_ < 0 ? field_->cap() : guard_; }
  void set_guard_digits(long g) { guard_ = g; }
  const IntMatrix& basis() const { return a_; }
  const std::vector<Element>& branches() const { return branches_; }
  const Matrix& shift() const { return shift_; }
  const Matrix& basis_inverse() const { return ainv_; }

  // The matrix D with log(t) = log_0(t) + D v(t), where log_0 is the
  // logarithm with all branches zero and v(t) the valuation vector.
  Matrix valuation_form() const {
    const Field& F = *field_;
    Matrix a = Matrix::from_ints(F, a_);
    return ainv_ * Matrix::diagonal(F, branches_) * a + shift_;
  }

  std::vector<Element> evaluate(const std::vector<Element>& t) const {
    const Field& F = *field_;
    std::size_t n = rank();
    if (t.size() != n) throw DimensionMismatch("torus element has the wrong rank");
    std::vector<long> v = valuation_vector(t);
    const Field& W = F.with_cap(F.cap() + guard_digits());
    std::vector<Element> y;
    for (std::size_t i = 0; i < n; ++i) {
      Element zeta = Element::one(W);
      for (std::size_t j = 0; j < n; ++j)
        if (a_[i][j] != 0) zeta = zeta * t[j].convert(W).pow(a_[i][j]);
      y.push_back(iwasawa_log(zeta, branches_[i].convert(W)).convert(F));
    }
    std::vector<Element> x(n, Element::zero(F));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!ainv_(i, j).is_exact_zero()) x[i] += ainv_(i, j) * y[j];
        if (!shift_(i, j).is_exact_zero() && v[j] != 0) x[i] += shift_(i, j) * Element::integer(F, v[j]);
      }
    return x;
  }

  std::vector<Element> evaluate(const Matrix& t) const {
    if (!t.is_diagonal()) throw std::domain_error("torus element must be diagonal");
    return evaluate(t.diagonal_entries());
  }

 private:
  const Field* field_ = nullptr;
  IntMatrix a_;
  std::vector<Element> branches_;
  Matrix ainv_;
  Matrix shift_;
  long guard_ = -1;
};

// A homomorphism T/T_0 -> t_E, written as a matrix acting on valuation vectors.
struct LogDifference {
  Matrix form;

  std::vector<Element> apply(const std::vector<long>& v) const {
    const Field& F = form.field();
    std::vector<Element> out(form.rows(), Element::zero(F));
    for (std::size_t i = 0; i < form.rows(); ++i)
      for (std::size_t j = 0; j < form.cols(); ++j)
        if (v[j] != 0) out[i] += form(i, j) * Element::integer(F, v[j]);
    return out;
  }
};

// l1 - l2, which vanishes on the compact part of the torus.
inline LogDifference log_difference(const TorusLogarithm& l1, const TorusLogarithm& l2) {
  if (l1.rank() != l2.rank()) throw DimensionMismatch("logarithms on tori of different rank");
  return {l1.valuation_form() - l2.valuation_form()};
}

// l + d.
inline TorusLogarithm shifted(const TorusLogarithm& l, const LogDifference& d) {
  return TorusLogarithm(l.field(), l.basis(), l.branches(), l.shift() + d.form);
}

// Image of s in T under the cocharacter lattice map given by the integer n x m matrix `emb`.
inline std::vector<Element> embed_subtorus(const IntMatrix& emb, const std::vector<Element>& s) {
  std::vector<Element> t;
  for (const auto& row : emb) {
    if (row.size() != s.size()) throw DimensionMismatch("embedding and subtorus rank differ");
    Element x = Element::one(s.at(0).field());
    for (std::size_t k = 0; k < s.size(); ++k)
      if (row[k] != 0) x = x * s[k].pow(row[k]);
    t.push_back(x);
  }
  return t;
}

// The logarithm s -> log(emb(s)) expressed on the subtorus.  It exists exactly
// when the valuation form preserves the image of the embedding.
inline TorusLogarithm restrict_to_subtorus(const TorusLogarithm& log, const IntMatrix& emb) {
  const Field& F = log.field();
  Matrix e = Matrix::from_ints(F, emb);
  std::size_t m = e.cols();
  if (e.rows() != log.rank()) throw DimensionMismatch("embedding has the wrong number of rows");
  std::vector<std::size_t> rows = row_reduce(e.transpose()).pivot_cols;
  if (rows.size() != m) throw IncompatibleSubtorus("embedding is not injective on Lie algebras");
  Matrix me = log.valuation_form() * e;
  Matrix x = solve(e.select_rows(rows), me.select_rows(rows));
  if (!approx_equal(e * x, me, 2))
    throw IncompatibleSubtorus("the logarithm does not map the subtorus into its Lie algebra");
  std::vector<Element> branches;
  Matrix shift = x;
  for (std::size_t i = 0; i < m; ++i) {
    branches.push_back(x(i, i));
    shift(i, i) = Element::zero(F);
  }
  IntMatrix id(m, std::vector<long>(m, 0));
  for (std::size_t i = 0; i < m; ++i) id[i][i] = 1;
  return TorusLogarithm(F, id, branches, shift);
}

}  // namespace loglift
