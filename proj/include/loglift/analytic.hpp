#pragma once

#include <cmath>

#include "loglift/field.hpp"

namespace loglift {

// Teichmuller representative of a unit: the root of unity of order prime to p
// congruent to x modulo the maximal ideal.
inline Element teichmuller(const Element& x) {
  if (x.scaled_valuation() != 0) throw std::domain_error("teichmuller representative of a non-unit");
  const Field& F = x.field();
  long q = 1;
  for (int i = 0; i < F.residue_degree(); ++i) q *= F.prime();
  Element y = x.capped();
  long limit = y.scaled_precision() + 4;
  for (long it = 0; it < limit; ++it) {
    Element next = y.pow(q);
    bool done = (next - y).is_zero();
    y = next;
    if (done) break;
  }
  return y;
}

// log(u) by its power series; requires v(u - 1) > 0.
inline Element log_series(const Element& u) {
  const Field& F = u.field();
  Element z = u - Element::one(F);
  if (z.is_exact_zero()) return z;
  z = z.capped();
  if (z.is_zero()) return z;
  Rational v = z.valuation();
  if (v <= 0) throw OutsideConvergenceDomain("logarithm series needs v(u - 1) > 0");
  Rational n_prec = z.precision();
  double vd = boost::rational_cast<double>(v);
  double nd = boost::rational_cast<double>(n_prec);
  double lp = std::log(static_cast<double>(F.prime()));
  double turn = 1.0 / (vd * lp);
  Element sum = z;
  Element power = z;
  for (long n = 2;; ++n) {
    double bound = static_cast<double>(n) * vd - std::log(static_cast<double>(n)) / lp;
    if (static_cast<double>(n) > turn && bound >= nd + 1e-9) break;
    power = power * z;
    Element term = power * Element::rational(F, mpz_class(n % 2 == 0 ? -1 : 1), mpz_class(n));
    sum = sum + term;
  }
  return sum.with_precision(n_prec);
}

// exp(x) by its power series; requires v(x) > 1/(p-1).
inline Element exp_padic(const Element& x) {
  const Field& F = x.field();
  if (x.is_exact_zero()) return Element::one(F);
  Element y = x.capped();
  long p = F.prime();
  if (y.is_zero()) return Element::one(F) + y;
  Rational v = y.valuation();
  if (v * (p - 1) <= 1) throw OutsideConvergenceDomain("exponential series needs v(x) > 1/(p-1)");
  Rational n_prec = y.precision();
  Element sum = Element::one(F) + y;
  Element term = y;
  for (long n = 2;; ++n) {
    Rational bound = Rational(n) * v - Rational(n - 1, p - 1);
    if (bound >= n_prec) break;
    term = term * y * Element::rational(F, mpz_class(1), mpz_class(n));
    sum = sum + term;
  }
  return sum.with_precision(n_prec);
}

// Iwasawa logarithm on Q_p^x with branch log(p) = branch.
inline Element iwasawa_log(const Element& x, const Element& branch) {
  if (&x.field() != &branch.field()) throw FieldMismatch("argument and branch live in different fields");
  if (x.is_zero()) throw DivisionByIndistinguishableZero("logarithm of zero");
  if (!x.is_base()) throw std::domain_error("argument of the Iwasawa logarithm must lie in Q_p");
  const Field& F = x.field();
  long v = x.coefficient(0).valuation();
  Element w = x.shifted(-v);
  Element zeta = teichmuller(w);
  Element u = w.capped() * zeta.inverse();
  Element result = log_series(u);
  if (v != 0) result = result + Element::integer(F, v) * branch;
  return result;
}

}  // namespace loglift
