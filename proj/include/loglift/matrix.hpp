#pragma once

#include <string>
#include <vector>

#include "loglift/literal.hpp"

namespace loglift {

using IntMatrix = std::vector<std::vector<long>>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& F, std::size_t rows, std::size_t cols)
      : field_(&F), rows_(rows), cols_(cols), a_(rows * cols, Element::zero(F)) {}

  static Matrix identity(const Field& F, std::size_t n) {
    Matrix m(F, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Element::one(F);
    return m;
  }

  static Matrix from_ints(const Field& F, const IntMatrix& rows) {
    std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Matrix m(F, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged integer matrix");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = Element::integer(F, rows[i][j]);
    }
    return m;
  }

  static Matrix diagonal(const Field& F, const std::vector<Element>& d) {
    Matrix m(F, d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static Matrix elementary(const Field& F, std::size_t n, std::size_t i, std::size_t j, const Element& a) {
    Matrix m(F, n, n);
    m(i, j) = a;
    return m;
  }

  const Field& field() const { return *field_; }
  bool has_field() const { return field_ != nullptr; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Element& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
  }

  std::vector<Element> diagonal_entries() const {
    std::vector<Element> d;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) d.push_back((*this)(i, i));
    return d;
  }

  // Smallest entry valuation (the precision for entries indistinguishable from zero).
  Rational min_valuation() const {
    Rational v = infinite_rational();
    for (const auto& x : a_) v = std::min(v, x.valuation());
    return v;
  }

  Rational min_precision() const {
    Rational v = infinite_rational();
    for (const auto& x : a_) v = std::min(v, x.precision());
    return v;
  }

  Matrix transpose() const {
    Matrix t(*field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(*field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix select_columns(const std::vector<std::size_t>& cols) const {
    Matrix b(*field_, rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) b(i, j) = (*this)(i, cols[j]);
    return b;
  }

  Matrix select_rows(const std::vector<std::size_t>& rows) const {
    Matrix b(*field_, rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) b(i, j) = (*this)(rows[i], j);
    return b;
  }

  Matrix with_precision(const Rational& n) const {
    Matrix m = *this;
    for (auto& x : m.a_) x = x.with_precision(n);
    return m;
  }

  Matrix convert(const Field& F) const {
    Matrix m(F, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k].convert(F);
    return m;
  }

  Matrix operator-() const {
    Matrix m = *this;
    for (auto& x : m.a_) x = -x;
    return m;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_shape(b);
    Matrix m = a;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = a.a_[k] + b.a_[k];
    return m;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_shape(b);
    Matrix m = a;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = a.a_[k] - b.a_[k];
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix m(*a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Element& x = a(i, k);
        if (x.is_exact_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Element& y = b(k, j);
          if (y.is_exact_zero()) continue;
          m(i, j) += x * y;
        }
      }
    }
    return m;
  }

  friend Matrix operator*(const Element& s, const Matrix& a) {
    Matrix m = a;
    if (s.is_exact_zero()) return Matrix(*a.field_, a.rows_, a.cols_);
    for (auto& x : m.a_)
      if (!x.is_exact_zero()) x = s * x;
    return m;
  }

  Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
  Matrix& operator-=(const Matrix& o) { return *this = *this - o; }

  std::vector<Element>& data() { return a_; }
  const std::vector<Element>& data() const { return a_; }

 private:
  void check_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionMismatch("matrix shapes differ");
  }

  const Field* field_ = nullptr;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> a_;
};

inline Matrix power(const Matrix& a, long k) {
  Matrix r = Matrix::identity(a.field(), a.rows());
  for (long i = 0; i < k; ++i) r = r * a;
  return r;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_exact_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_exact_zero()) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

inline Matrix hstack(const std::vector<Matrix>& parts, const Field& F, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& p : parts) cols += p.cols();
  Matrix m(F, rows, cols);
  std::size_t c = 0;
  for (const auto& p : parts) {
    m.set_block(0, c, p);
    c += p.cols();
  }
  return m;
}

inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

// Entrywise congruence modulo p^(min precision - slack).
inline bool approx_equal(const Matrix& a, const Matrix& b, long slack) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Rational n = std::min(a(i, j).precision(), b(i, j).precision());
      if (is_infinite(n)) {
        if (!(a(i, j) - b(i, j)).is_exact_zero()) return false;
        continue;
      }
      if ((a(i, j) - b(i, j)).valuation() < n - slack) return false;
    }
  return true;
}

// Number of p-adic digits, relative to the size of the larger matrix, on which
// two matrices provably agree.  Infinite when both are exact and equal.
inline Rational relative_agreement(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("cannot compare matrices of different shapes");
  Rational scale = infinite_rational();
  for (const auto* m : {&a, &b})
    for (const auto& x : m->data())
      if (!x.is_zero()) scale = std::min(scale, x.valuation());
  Rational diff = (a - b).min_valuation();
  if (is_infinite(diff)) return infinite_rational();
  if (is_infinite(scale)) scale = 0;
  return diff - scale;
}

inline std::string format_matrix(const Matrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ",\n [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += format_element(m(i, j));
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace loglift
