#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "loglift/errors.hpp"

namespace loglift {

inline constexpr long kInfinitePrecision = std::numeric_limits<long>::max() / 8;

inline bool is_infinite(long n) { return n >= kInfinitePrecision; }

inline long add_prec(long a, long b) {
  if (is_infinite(a) || is_infinite(b)) return kInfinitePrecision;
  return a + b;
}

// Shared, immutable data for one (p, cap) pair.  Instances are interned and
// live for the whole program, so elements keep a plain pointer to them.
class PadicContext {
 public:
  static const PadicContext& get(long p, long cap) {
    static std::mutex mutex;
    static std::map<std::pair<long, long>, std::unique_ptr<PadicContext>> registry;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = registry[{p, cap}];
    if (!slot) slot.reset(new PadicContext(p, cap));
    return *slot;
  }

  long prime() const { return p_; }
  long cap() const { return cap_; }

  const mpz_class& power(long k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= powers_.size())
      throw PrecisionLoss("requested power p^" + std::to_string(k) + " beyond supported range");
    return powers_[static_cast<std::size_t>(k)];
  }

  const PadicContext& with_cap(long cap) const { return get(p_, cap); }

 private:
  PadicContext(long p, long cap) : p_(p), cap_(cap) {
    if (p < 2) throw std::invalid_argument("prime must be at least 2");
    if (cap < 1) throw std::invalid_argument("precision cap must be positive");
    mpz_class pp = p;
    if (!mpz_probab_prime_p(pp.get_mpz_t(), 25)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    std::size_t count = static_cast<std::size_t>(16 * cap + 1024);
    powers_.reserve(count);
    mpz_class x = 1;
    for (std::size_t k = 0; k < count; ++k) {
      powers_.push_back(x);
      x *= p;
    }
  }

  long p_;
  long cap_;
  std::vector<mpz_class> powers_;
};

// An element of Q_p in the capped-absolute model: p^val * unit + O(p^prec).
// Exact values carry no error term, have prec == kInfinitePrecision and may be
// rational: p^val * unit / den with den > 0 prime to p and to unit.
// A value indistinguishable from zero has unit == 0 and val == prec.
class Padic {
 public:
  Padic() = default;

  static Padic exact(const PadicContext& ctx, const mpz_class& n) {
    Padic r(ctx);
    r.exact_ = true;
    r.prec_ = kInfinitePrecision;
    if (n == 0) {
      r.val_ = kInfinitePrecision;
      return r;
    }
    r.unit_ = n;
    r.val_ = remove_p(r.unit_, ctx.prime());
    return r;
  }

  static Padic exact(const PadicContext& ctx, long n) { return exact(ctx, mpz_class(n)); }

  // O(p^prec).
  static Padic zero(const PadicContext& ctx, long prec) {
    if (is_infinite(prec)) return exact(ctx, 0);
    Padic r(ctx);
    r.exact_ = false;
    r.val_ = prec;
    r.prec_ = prec;
    return r;
  }

  // p^val * unit + O(p^prec); unit may contain factors of p.
  static Padic make(const PadicContext& ctx, long val, const mpz_class& unit, long prec) {
    if (is_infinite(prec)) {
      Padic r = exact(ctx, unit);
      if (!r.is_exact_zero()) r.val_ += val;
      return r;
    }
    Padic r(ctx);
    r.exact_ = false;
    r.normalize(val, unit, prec);
    return r;
  }

  static Padic from_rational(const PadicContext& ctx, const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DivisionByIndistinguishableZero("rational with zero denominator");
    return exact(ctx, num) * exact(ctx, den).inverse();
  }

  const PadicContext& context() const { return *ctx_; }
  long prime() const { return ctx_->prime(); }
  bool is_exact() const { return exact_; }
  bool is_zero() const { return unit_ == 0; }
  bool is_exact_zero() const { return exact_ && unit_ == 0; }
  long valuation() const { return val_; }
  long precision() const { return prec_; }
  long relative_precision() const { return exact_ ? kInfinitePrecision : prec_ - val_; }
  const mpz_class& unit() const { return unit_; }
  const mpz_class& denominator() const { return den_; }
  bool is_integral_exact() const { return exact_ && den_ == 1; }

  // unit / den modulo p^k.
  mpz_class unit_mod(long k) const {
    if (k <= 0) return 0;
    const mpz_class& mod = ctx_->power(k);
    mpz_class u = unit_;
    if (den_ != 1) {
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), den_.get_mpz_t(), mod.get_mpz_t());
      u *= inv;
    }
    mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
    return u;
  }

  Padic with_precision(long n) const {
    if (n >= prec_) return *this;
    if (is_zero() || val_ >= n) return zero(*ctx_, n);
    return make(*ctx_, val_, unit_mod(n - val_), n);
  }

  // Replaces an exact value by its expansion to the context cap (relative).
  Padic capped() const {
    if (!exact_) return *this;
    if (is_zero()) return zero(*ctx_, ctx_->cap());
    return with_precision(val_ + ctx_->cap());
  }

  Padic convert(const PadicContext& ctx) const {
    if (ctx.prime() != prime()) throw FieldMismatch("cannot convert between different primes");
    Padic r = *this;
    r.ctx_ = &ctx;
    return r;
  }

  Padic shifted(long k) const {
    Padic r = *this;
    if (r.is_exact_zero()) return r;
    r.val_ += k;
    if (!exact_) r.prec_ += k;
    return r;
  }

  Padic operator-() const {
    Padic r = *this;
    if (is_zero()) return r;
    if (exact_) {
      r.unit_ = -unit_;
    } else {
      r.unit_ = ctx_->power(relative_precision()) - unit_;
    }
    return r;
  }

  friend Padic operator+(const Padic& a, const Padic& b) {
    a.check_same(b);
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    const PadicContext& ctx = *a.ctx_;
    if (a.exact_ && b.exact_) {
      long vmin = std::min(a.val_, b.val_);
      mpz_class u = a.unit_ * b.den_ * ctx.power(a.val_ - vmin) + b.unit_ * a.den_ * ctx.power(b.val_ - vmin);
      return exact_ratio(ctx, vmin, u, a.den_ * b.den_);
    }
    long n = std::min(a.prec_, b.prec_);
    long vmin = std::min(a.val_, b.val_);
    if (vmin >= n) return zero(ctx, n);
    mpz_class u = 0;
    if (a.val_ < n) u += a.unit_mod(n - a.val_) * ctx.power(a.val_ - vmin);
    if (b.val_ < n) u += b.unit_mod(n - b.val_) * ctx.power(b.val_ - vmin);
    return make(ctx, vmin, u, n);
  }

  friend Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }

  friend Padic operator*(const Padic& a, const Padic& b) {
    a.check_same(b);
    const PadicContext& ctx = *a.ctx_;
    if (a.is_exact_zero() || b.is_exact_zero()) return exact(ctx, 0);
    if (a.exact_ && b.exact_) return exact_ratio(ctx, a.val_ + b.val_, a.unit_ * b.unit_, a.den_ * b.den_);
    if (a.is_zero() || b.is_zero()) {
      long n = std::min(add_prec(a.prec_, b.val_), add_prec(b.prec_, a.val_));
      return zero(ctx, n);
    }
    long rel = std::min(a.relative_precision(), b.relative_precision());
    Padic r(ctx);
    r.exact_ = false;
    r.val_ = a.val_ + b.val_;
    r.prec_ = r.val_ + rel;
    r.unit_ = a.unit_mod(rel) * b.unit_mod(rel);
    mpz_fdiv_r(r.unit_.get_mpz_t(), r.unit_.get_mpz_t(), ctx.power(rel).get_mpz_t());
    return r;
  }

  Padic inverse() const {
    if (is_zero()) throw DivisionByIndistinguishableZero("inverse of a value indistinguishable from zero");
    if (exact_) return exact_ratio(*ctx_, -val_, den_ * sgn(unit_), abs(unit_));
    Padic r(*ctx_);
    r.val_ = -val_;
    long rel = relative_precision();
    r.exact_ = false;
    r.prec_ = r.val_ + rel;
    const mpz_class& mod = ctx_->power(rel);
    mpz_class u = unit_;
    mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
    mpz_invert(r.unit_.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
    return r;
  }

  friend Padic operator/(const Padic& a, const Padic& b) { return a * b.inverse(); }

  Padic& operator+=(const Padic& o) { return *this = *this + o; }
  Padic& operator-=(const Padic& o) { return *this = *this - o; }
  Padic& operator*=(const Padic& o) { return *this = *this * o; }

  Padic pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Padic result = exact(*ctx_, 1);
    Padic base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  // True when the difference is divisible by p^n.
  bool agrees_with(const Padic& o, long n) const { return (*this - o).valuation() >= n; }

  // Structural identity: same value, same precision.
  bool identical(const Padic& o) const {
    return ctx_->prime() == o.ctx_->prime() && exact_ == o.exact_ && val_ == o.val_ && prec_ == o.prec_ &&
           unit_ == o.unit_ && den_ == o.den_;
  }

  // Representative of the value modulo p^n as an integer in [0, p^n); needs val >= 0.
  mpz_class residue(long n) const {
    if (is_zero() || val_ >= n) return 0;
    if (val_ < 0) throw std::domain_error("residue of a non-integral p-adic number");
    mpz_class r = unit_mod(n - val_) * ctx_->power(val_);
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), ctx_->power(n).get_mpz_t());
    return r;
  }

  // Base-p digits of the unit part, least significant first.
  std::vector<long> unit_digits() const {
    std::vector<long> out;
    if (is_zero()) return out;
    mpz_class u = unit_;
    if (exact_ && (u < 0 || den_ != 1)) throw std::domain_error("digits of a negative or fractional exact value");
    mpz_class p = ctx_->prime();
    while (u != 0) {
      mpz_class d;
      mpz_fdiv_qr(u.get_mpz_t(), d.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t());
      out.push_back(d.get_si());
    }
    return out;
  }

 private:
  explicit Padic(const PadicContext& ctx) : ctx_(&ctx) {}

  // Exact p^val * num / den, normalised.
  static Padic exact_ratio(const PadicContext& ctx, long val, const mpz_class& num, const mpz_class& den) {
    if (num == 0) return exact(ctx, 0);
    mpq_class q(num, den);
    q.canonicalize();
    Padic r(ctx);
    r.exact_ = true;
    r.prec_ = kInfinitePrecision;
    r.unit_ = q.get_num();
    r.den_ = q.get_den();
    r.val_ = val + remove_p(r.unit_, ctx.prime()) - remove_p(r.den_, ctx.prime());
    return r;
  }

  static long remove_p(mpz_class& u, long p) {
    mpz_class pp = p;
    return static_cast<long>(mpz_remove(u.get_mpz_t(), u.get_mpz_t(), pp.get_mpz_t()));
  }

  void normalize(long val, mpz_class u, long prec) {
    if (u == 0 || val >= prec) {
      unit_ = 0;
      val_ = prec_ = prec;
      return;
    }
    long k = remove_p(u, ctx_->prime());
    val_ = val + k;
    prec_ = prec;
    if (val_ >= prec_) {
      unit_ = 0;
      val_ = prec_;
      return;
    }
    mpz_fdiv_r(unit_.get_mpz_t(), u.get_mpz_t(), ctx_->power(prec_ - val_).get_mpz_t());
  }

  void check_same(const Padic& o) const {
    if (ctx_ != o.ctx_) {
      if (ctx_ == nullptr || o.ctx_ == nullptr) throw FieldMismatch("uninitialised p-adic value");
      throw FieldMismatch("p-adic values from different contexts");
    }
  }

  const PadicContext* ctx_ = nullptr;
  bool exact_ = true;
  long val_ = kInfinitePrecision;
  long prec_ = kInfinitePrecision;
  mpz_class unit_ = 0;
  mpz_class den_ = 1;
};

}  // namespace loglift
