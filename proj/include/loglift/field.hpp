#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "loglift/padic.hpp"

namespace loglift {

using Rational = boost::rational<long>;

inline Rational infinite_rational() { return Rational(kInfinitePrecision); }
inline bool is_infinite(const Rational& q) { return q.numerator() >= kInfinitePrecision / 4; }

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long ceil_div(long a, long b) { return -floor_div(-a, b); }

inline long floor_rational(const Rational& q) { return floor_div(q.numerator(), q.denominator()); }

inline std::string rational_str(const Rational& q) {
  if (is_infinite(q)) return "inf";
  std::string s = std::to_string(q.numerator());
  return q.denominator() == 1 ? s : s + "/" + std::to_string(q.denominator());
}

enum class ExtensionKind { Base, Unramified, SqrtP };

struct ExtensionSpec {
  ExtensionKind kind = ExtensionKind::Base;
  int degree = 1;
  // Monic modulus x^d + c_{d-1} x^{d-1} + ... + c_0, stored as c_0 .. c_{d-1}.
  std::vector<long> modulus;

  auto key() const { return std::tie(kind, degree, modulus); }
  friend bool operator<(const ExtensionSpec& a, const ExtensionSpec& b) { return a.key() < b.key(); }
  friend bool operator==(const ExtensionSpec& a, const ExtensionSpec& b) { return a.key() == b.key(); }
};

namespace detail {

using Fpoly = std::vector<long>;  // coefficients mod p, low degree first

inline void trim(Fpoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline long modp(long a, long p) { return ((a % p) + p) % p; }

inline long inv_modp(long a, long p) {
  mpz_class r, aa = modp(a, p), pp = p;
  mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), pp.get_mpz_t());
  return r.get_si();
}

inline Fpoly poly_mod(Fpoly a, const Fpoly& m, long p) {
  trim(a);
  long lead_inv = inv_modp(m.back(), p);
  while (a.size() >= m.size()) {
    long c = modp(a.back() * lead_inv, p);
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = modp(a[shift + i] - c * m[i], p);
    trim(a);
  }
  return a;
}

inline Fpoly poly_mulmod(const Fpoly& a, const Fpoly& b, const Fpoly& m, long p) {
  if (a.empty() || b.empty()) return {};
  Fpoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = modp(c[i + j] + a[i] * b[j], p);
  return poly_mod(c, m, p);
}

inline Fpoly poly_gcd(Fpoly a, Fpoly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Fpoly r = poly_mod(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

// x^(p^k) mod m.
inline Fpoly frobenius_power(const Fpoly& m, long p, int k) {
  Fpoly x = poly_mod({0, 1}, m, p);
  for (int step = 0; step < k; ++step) {
    Fpoly result = {1}, base = x;
    long e = p;
    while (e > 0) {
      if (e & 1) result = poly_mulmod(result, base, m, p);
      e >>= 1;
      if (e) base = poly_mulmod(base, base, m, p);
    }
    x = result;
  }
  return x;
}

inline bool is_irreducible(const Fpoly& m, long p) {
  int d = static_cast<int>(m.size()) - 1;
  if (d < 1) return false;
  Fpoly x = poly_mod({0, 1}, m, p);
  auto minus_x = [&](Fpoly a) {
    a.resize(std::max(a.size(), x.size()), 0);
    for (std::size_t i = 0; i < x.size(); ++i) a[i] = modp(a[i] - x[i], p);
    trim(a);
    return a;
  };
  if (!minus_x(frobenius_power(m, p, d)).empty()) return false;
  for (int q = 2; q <= d; ++q) {
    if (d % q != 0) continue;
    bool prime = true;
    for (int r = 2; r * r <= q; ++r)
      if (q % r == 0) prime = false;
    if (!prime) continue;
    Fpoly h = minus_x(frobenius_power(m, p, d / q));
    Fpoly g = poly_gcd(m, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

// Smallest monic irreducible polynomial of the given degree over F_p, in
// lexicographic order of (c_{d-1}, ..., c_0); returned as c_0 .. c_{d-1}.
inline std::vector<long> default_unramified_modulus(long p, int degree) {
  std::vector<long> c(static_cast<std::size_t>(degree), 0);
  while (true) {
    detail::Fpoly m(c.begin(), c.end());
    m.push_back(1);
    if (detail::is_irreducible(m, p)) return c;
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == p) c[i++] = 0;
    if (i == c.size()) throw std::invalid_argument("no irreducible polynomial found");
  }
}

class Field {
 public:
  static const Field& get(long p, long cap, ExtensionSpec ext = {}) {
    if (ext.kind == ExtensionKind::Base) {
      ext.degree = 1;
      ext.modulus.clear();
    } else if (ext.kind == ExtensionKind::SqrtP) {
      ext.degree = 2;
      ext.modulus = {-p, 0};
    } else {
      if (ext.degree < 1) throw std::invalid_argument("extension degree must be positive");
      if (ext.modulus.empty()) ext.modulus = default_unramified_modulus(p, ext.degree);
      if (static_cast<int>(ext.modulus.size()) != ext.degree)
        throw std::invalid_argument("modulus length does not match extension degree");
      detail::Fpoly m;
      for (long c : ext.modulus) m.push_back(detail::modp(c, p));
      m.push_back(1);
      if (!detail::is_irreducible(m, p)) throw std::invalid_argument("modulus is not irreducible modulo p");
      if (ext.degree == 1) {
        ext.kind = ExtensionKind::Base;
        ext.modulus.clear();
      }
    }
    static std::mutex mutex;
    static std::map<std::tuple<long, long, ExtensionSpec>, std::unique_ptr<Field>> registry;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = registry[{p, cap, ext}];
    if (!slot) slot.reset(new Field(PadicContext::get(p, cap), ext));
    return *slot;
  }

  static const Field& sqrt_p(long p, long cap) { return get(p, cap, {ExtensionKind::SqrtP, 2, {}}); }
  static const Field& unramified(long p, long cap, int degree) {
    return get(p, cap, {ExtensionKind::Unramified, degree, {}});
  }

  const PadicContext& base() const { return *base_; }
  long prime() const { return base_->prime(); }
  long cap() const { return base_->cap(); }
  const ExtensionSpec& spec() const { return spec_; }
  ExtensionKind kind() const { return spec_.kind; }
  int degree() const { return spec_.degree; }
  int ramification() const { return spec_.kind == ExtensionKind::SqrtP ? 2 : 1; }
  int residue_degree() const { return spec_.kind == ExtensionKind::Unramified ? spec_.degree : 1; }
  bool has_sqrt_p() const { return spec_.kind == ExtensionKind::SqrtP; }
  char generator_symbol() const { return spec_.kind == ExtensionKind::SqrtP ? 's' : 'w'; }
  const std::vector<Padic>& modulus() const { return modulus_; }

  const Field& with_cap(long cap) const { return get(prime(), cap, spec_); }

 private:
  Field(const PadicContext& base, ExtensionSpec spec) : base_(&base), spec_(std::move(spec)) {
    for (long c : spec_.modulus) modulus_.push_back(Padic::exact(*base_, c));
  }

  const PadicContext* base_;
  ExtensionSpec spec_;
  std::vector<Padic> modulus_;
};

// Element of a finite extension E of Q_p, stored as coefficients in the power
// basis of the designated generator.
class Element {
 public:
  Element() = default;

  Element(const Field& F, const Padic& a) : field_(&F), c_(static_cast<std::size_t>(F.degree()), Padic::exact(F.base(), 0)) {
    c_[0] = a.convert(F.base());
  }

  static Element from_coefficients(const Field& F, std::vector<Padic> coeffs) {
    if (static_cast<int>(coeffs.size()) != F.degree()) throw std::invalid_argument("wrong number of coefficients");
    Element r;
    r.field_ = &F;
    for (auto& x : coeffs) x = x.convert(F.base());
    r.c_ = std::move(coeffs);
    return r;
  }

  static Element zero(const Field& F) { return Element(F, Padic::exact(F.base(), 0)); }
  static Element one(const Field& F) { return Element(F, Padic::exact(F.base(), 1)); }
  static Element integer(const Field& F, const mpz_class& n) { return Element(F, Padic::exact(F.base(), n)); }
  static Element integer(const Field& F, long n) { return integer(F, mpz_class(n)); }
  static Element rational(const Field& F, const mpz_class& num, const mpz_class& den) {
    return Element(F, Padic::from_rational(F.base(), num, den));
  }
  static Element rational(const Field& F, const Rational& q) {
    return rational(F, mpz_class(q.numerator()), mpz_class(q.denominator()));
  }
  static Element inexact_zero(const Field& F, const Rational& prec) {
    Element r = zero(F);
    return r.with_precision(prec);
  }

  static Element generator(const Field& F) {
    if (F.degree() < 2) throw std::invalid_argument("field has no extension generator");
    Element r = zero(F);
    r.c_[1] = Padic::exact(F.base(), 1);
    return r;
  }

  static Element sqrt_p(const Field& F) {
    if (!F.has_sqrt_p()) throw MissingSqrtP("the coefficient field does not contain a square root of p");
    return generator(F);
  }

  const Field& field() const { return *field_; }
  bool has_field() const { return field_ != nullptr; }
  const std::vector<Padic>& coefficients() const { return c_; }
  const Padic& coefficient(std::size_t i) const { return c_[i]; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_exact_zero() const {
    for (const auto& x : c_)
      if (!x.is_exact_zero()) return false;
    return true;
  }
  bool is_exact() const {
    for (const auto& x : c_)
      if (!x.is_exact()) return false;
    return true;
  }
  bool is_base() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return false;
    return true;
  }

  Padic base_value() const {
    if (!is_base()) throw std::domain_error("element does not lie in Q_p");
    return c_[0];
  }

  // Valuation times the ramification index; for zero it equals the precision.
  long scaled_valuation() const {
    if (field_->ramification() == 2) {
      const Padic &a = c_[0], &b = c_[1];
      long va = a.is_exact_zero() ? kInfinitePrecision : 2 * a.valuation();
      long vb = b.is_exact_zero() ? kInfinitePrecision : 2 * b.valuation() + 1;
      return std::min(va, vb);
    }
    long v = kInfinitePrecision;
    for (const auto& x : c_) v = std::min(v, x.valuation());
    return v;
  }

  long scaled_precision() const {
    if (field_->ramification() == 2) {
      long pa = c_[0].is_exact() ? kInfinitePrecision : 2 * c_[0].precision();
      long pb = c_[1].is_exact() ? kInfinitePrecision : 2 * c_[1].precision() + 1;
      return std::min(pa, pb);
    }
    long n = kInfinitePrecision;
    for (const auto& x : c_) n = std::min(n, x.precision());
    return n;
  }

  Rational valuation() const { return to_rational(scaled_valuation()); }
  Rational precision() const { return to_rational(scaled_precision()); }

  Element with_scaled_precision(long n) const {
    Element r = *this;
    if (field_->ramification() == 2) {
      r.c_[0] = c_[0].with_precision(ceil_div(n, 2));
      r.c_[1] = c_[1].with_precision(ceil_div(n - 1, 2));
    } else {
      for (auto& x : r.c_) x = x.with_precision(n);
    }
    return r;
  }

  Element with_precision(const Rational& n) const {
    if (is_infinite(n)) return *this;
    long e = field_->ramification();
    return with_scaled_precision(ceil_div(n.numerator() * e, n.denominator()));
  }

  // Exact values are replaced by their expansion to the relative cap.
  Element capped() const {
    if (!is_exact()) return *this;
    long e = field_->ramification();
    if (is_exact_zero()) return with_scaled_precision(e * field_->cap());
    return with_scaled_precision(scaled_valuation() + e * field_->cap());
  }

  Element convert(const Field& F) const {
    if (F.prime() != field_->prime() || !(F.spec() == field_->spec()))
      throw FieldMismatch("conversion between incompatible coefficient fields");
    Element r;
    r.field_ = &F;
    for (const auto& x : c_) r.c_.push_back(x.convert(F.base()));
    return r;
  }

  Element shifted(long k) const {
    Element r = *this;
    for (auto& x : r.c_) x = x.shifted(k);
    return r;
  }

  Element operator-() const {
    Element r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Element operator+(const Element& a, const Element& b) {
    a.check_same(b);
    Element r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }

  friend Element operator-(const Element& a, const Element& b) {
    a.check_same(b);
    Element r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }

  friend Element operator*(const Element& a, const Element& b) {
    a.check_same(b);
    std::size_t d = a.c_.size();
    if (d == 1) {
      Element r = a;
      r.c_[0] = a.c_[0] * b.c_[0];
      return r;
    }
    const PadicContext& ctx = a.field_->base();
    std::vector<Padic> prod(2 * d - 1, Padic::exact(ctx, 0));
    for (std::size_t i = 0; i < d; ++i) {
      if (a.c_[i].is_exact_zero()) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (b.c_[j].is_exact_zero()) continue;
        prod[i + j] += a.c_[i] * b.c_[j];
      }
    }
    const auto& m = a.field_->modulus();
    for (std::size_t k = 2 * d - 2; k >= d; --k) {
      if (prod[k].is_exact_zero()) continue;
      for (std::size_t i = 0; i < d; ++i) {
        if (m[i].is_exact_zero()) continue;
        prod[k - d + i] -= prod[k] * m[i];
      }
    }
    Element r;
    r.field_ = a.field_;
    r.c_.assign(prod.begin(), prod.begin() + static_cast<long>(d));
    return r;
  }

  Element inverse() const {
    if (is_zero()) throw DivisionByIndistinguishableZero("inverse of an element indistinguishable from zero");
    if (c_.size() == 1) {
      Element r = *this;
      r.c_[0] = c_[0].inverse();
      return r;
    }
    if (field_->kind() == ExtensionKind::SqrtP) {
      const Padic &a = c_[0], &b = c_[1];
      Padic norm = a * a - Padic::exact(field_->base(), field_->prime()) * b * b;
      Padic ninv = norm.inverse();
      Element r = *this;
      r.c_[0] = a * ninv;
      r.c_[1] = -(b * ninv);
      return r;
    }
    return unramified_inverse();
  }

  friend Element operator/(const Element& a, const Element& b) { return a * b.inverse(); }

  Element& operator+=(const Element& o) { return *this = *this + o; }
  Element& operator-=(const Element& o) { return *this = *this - o; }
  Element& operator*=(const Element& o) { return *this = *this * o; }

  Element pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Element result = one(*field_);
    Element base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  bool agrees_with(const Element& o, const Rational& n) const { return (*this - o).valuation() >= n; }

  bool identical(const Element& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].identical(o.c_[i])) return false;
    return true;
  }

 private:
  Rational to_rational(long scaled) const {
    if (scaled >= kInfinitePrecision) return infinite_rational();
    return Rational(scaled, field_->ramification());
  }

  void check_same(const Element& o) const {
    if (field_ != o.field_) {
      if (!field_ || !o.field_) throw FieldMismatch("uninitialised field element");
      throw FieldMismatch("elements of different coefficient fields");
    }
  }

  // Solves (multiplication by this) * y = 1 over Q_p.
  Element unramified_inverse() const {
    std::size_t d = c_.size();
    const PadicContext& ctx = field_->base();
    std::vector<std::vector<Padic>> m(d, std::vector<Padic>(d + 1, Padic::exact(ctx, 0)));
    Element basis = one(*field_);
    Element w = generator(*field_);
    for (std::size_t k = 0; k < d; ++k) {
      Element col = *this * basis;
      for (std::size_t i = 0; i < d; ++i) m[i][k] = col.c_[i];
      basis = basis * w;
    }
    m[0][d] = Padic::exact(ctx, 1);
    for (std::size_t col = 0; col < d; ++col) {
      std::size_t piv = d;
      for (std::size_t i = col; i < d; ++i) {
        if (m[i][col].is_zero()) continue;
        if (piv == d || m[i][col].valuation() < m[piv][col].valuation()) piv = i;
      }
      if (piv == d) throw DivisionByIndistinguishableZero("element is not invertible at the available precision");
      std::swap(m[piv], m[col]);
      Padic inv = m[col][col].inverse();
      for (std::size_t j = col; j <= d; ++j) m[col][j] = m[col][j] * inv;
      for (std::size_t i = 0; i < d; ++i) {
        if (i == col || m[i][col].is_exact_zero()) continue;
        Padic f = m[i][col];
        for (std::size_t j = col; j <= d; ++j) m[i][j] -= f * m[col][j];
      }
    }
    Element r = zero(*field_);
    for (std::size_t i = 0; i < d; ++i) r.c_[i] = m[i][d];
    return r;
  }

  const Field* field_ = nullptr;
  std::vector<Padic> c_;
};

}  // namespace loglift
