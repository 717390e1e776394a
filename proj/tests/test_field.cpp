#include <gtest/gtest.h>

#include <random>

#include "loglift/analytic.hpp"
#include "loglift/literal.hpp"
#include "oracles.hpp"

using namespace loglift;

namespace {

const Field& Q5(long cap = 20) { return Field::get(5, cap); }

Element lit(const Field& F, const char* s) { return parse_element(F, s); }

mpz_class residue(const Element& x, long n) { return x.coefficient(0).residue(n); }

Padic random_padic(const PadicContext& ctx, std::mt19937_64& rng, long vmin, long vmax) {
  std::uniform_int_distribution<long> vd(vmin, vmax);
  long v = vd(rng);
  if (rng() % 7 == 0) return Padic::zero(ctx, v);
  mpz_class u = 0;
  for (long i = 0; i < ctx.cap(); ++i) u = u * ctx.prime() + static_cast<long>(rng() % ctx.prime());
  if (rng() % 5 == 0) return Padic::exact(ctx, u - 1000).shifted(v);
  return Padic::make(ctx, v, u, v + 1 + static_cast<long>(rng() % ctx.cap()));
}

}  // namespace

TEST(Padic, ExactArithmeticStaysExact) {
  const auto& ctx = PadicContext::get(5, 20);
  Padic a = Padic::exact(ctx, 250);
  EXPECT_EQ(a.valuation(), 3);
  EXPECT_TRUE(a.is_exact());
  Padic b = a * Padic::exact(ctx, -3) + Padic::exact(ctx, 7);
  EXPECT_TRUE(b.identical(Padic::exact(ctx, -743)));
  EXPECT_TRUE(Padic::exact(ctx, 5).inverse().is_exact());
  Padic third = Padic::exact(ctx, 3).inverse();
  EXPECT_TRUE(third.is_exact());
  EXPECT_TRUE((third * Padic::exact(ctx, 3)).identical(Padic::exact(ctx, 1)));
  EXPECT_EQ(third.residue(20), oracle::reduce(mpq_class(1, 3), 5, 20));
  EXPECT_EQ(Padic::from_rational(ctx, 50, 3).valuation(), 2);
}

TEST(Padic, PrecisionRules) {
  const auto& ctx = PadicContext::get(5, 20);
  Padic a = Padic::make(ctx, 1, 3, 8);   // 3*5 + O(5^8)
  Padic b = Padic::make(ctx, 2, 4, 12);  // 4*5^2 + O(5^12)
  EXPECT_EQ((a + b).precision(), 8);
  EXPECT_EQ((a * b).precision(), std::min(8 + 2, 12 + 1));
  EXPECT_EQ(a.inverse().precision(), 8 - 2);
  EXPECT_EQ(a.inverse().valuation(), -1);
  Padic z = a - a;
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.precision(), 8);
  EXPECT_THROW(z.inverse(), DivisionByIndistinguishableZero);
  EXPECT_THROW(Padic::exact(ctx, 0).inverse(), DivisionByIndistinguishableZero);
}

TEST(Padic, ProductOracle) {
  // (1 + p)(1 - p) = 1 - p^2 at p = 5, cap 20.
  const Field& F = Q5();
  Element x = lit(F, "1 + 5 + O(5^20)");
  Element y = lit(F, "1 - 5 + O(5^20)");
  Element prod = x * y;
  EXPECT_EQ(prod.precision(), Rational(20));
  mpz_class mod = oracle::pow_int(5, 20);
  mpz_class expect = 1 - 25 + mod;
  EXPECT_EQ(residue(prod, 20), expect);
  EXPECT_TRUE(prod.agrees_with(lit(F, "1 - 25"), 20));
}

TEST(Padic, RandomArithmeticMatchesIntegerOracle) {
  std::mt19937_64 rng(11);
  const auto& ctx = PadicContext::get(7, 15);
  mpz_class mod = oracle::pow_int(7, 15);
  for (int trial = 0; trial < 200; ++trial) {
    mpz_class a = 0, b = 0;
    for (int i = 0; i < 15; ++i) {
      a = a * 7 + static_cast<long>(rng() % 7);
      b = b * 7 + static_cast<long>(rng() % 7);
    }
    if (a % 7 == 0) a += 1;
    Padic pa = Padic::make(ctx, 0, a, 15), pb = Padic::make(ctx, 0, b, 15);
    mpz_class sum = a + b, prod = a * b, quot;
    mpz_fdiv_r(sum.get_mpz_t(), sum.get_mpz_t(), mod.get_mpz_t());
    mpz_fdiv_r(prod.get_mpz_t(), prod.get_mpz_t(), mod.get_mpz_t());
    mpz_invert(quot.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
    quot = quot * b;
    mpz_fdiv_r(quot.get_mpz_t(), quot.get_mpz_t(), mod.get_mpz_t());
    EXPECT_EQ((pa + pb).residue(15), sum);
    EXPECT_EQ((pa * pb).residue(15), prod);
    EXPECT_EQ((pb / pa).residue(15), quot);
  }
}

TEST(Padic, FieldAxiomsProperty) {
  std::mt19937_64 rng(3);
  const auto& ctx = PadicContext::get(3, 12);
  for (int trial = 0; trial < 300; ++trial) {
    Padic a = random_padic(ctx, rng, -2, 3), b = random_padic(ctx, rng, -2, 3), c = random_padic(ctx, rng, -2, 3);
    Padic lhs = a * (b + c), rhs = a * b + a * c;
    long n = std::min(lhs.precision(), rhs.precision());
    EXPECT_TRUE(lhs.agrees_with(rhs, n));
    EXPECT_TRUE(((a + b) - b).agrees_with(a, std::min(a.precision(), b.precision())));
    if (!a.is_zero()) {
      Padic one = a * a.inverse();
      EXPECT_TRUE(one.agrees_with(Padic::exact(ctx, 1), one.precision()));
    }
  }
}

TEST(Literal, RoundTripProperty) {
  std::mt19937_64 rng(5);
  for (long p : {2L, 3L, 5L, 7L}) {
    const Field& F = Field::get(p, 10);
    for (int trial = 0; trial < 200; ++trial) {
      Padic a = random_padic(F.base(), rng, -3, 4);
      std::string s = format_padic(a);
      Padic b = parse_element(F, s).coefficient(0);
      EXPECT_TRUE(a.identical(b)) << s << " -> " << format_padic(b);
    }
  }
}

TEST(Literal, CanonicalForm) {
  const Field& F = Q5(10);
  EXPECT_EQ(format_element(lit(F, "2 + 3*5^2 + O(5^10)")), "2 + 3*5^2 + O(5^10)");
  EXPECT_EQ(format_element(lit(F, "5^2 * (1 + 5 + O(5^4))")), "5^2 * (1 + 1*5 + O(5^4))");
  EXPECT_EQ(lit(F, "5^2 * (1 + 5 + O(5^4))").precision(), Rational(6));
  EXPECT_EQ(format_element(lit(F, "O(5^3)")), "O(5^3)");
  EXPECT_EQ(format_element(lit(F, "-7")), "-7");
  EXPECT_EQ(format_element(lit(F, "5^-2")), "5^-2 * (1)");
  EXPECT_TRUE(lit(F, "-1/3").agrees_with(Element::rational(F, -1, 3), 10));
  EXPECT_EQ(format_element(lit(F, "-1/3")), "-1/3");
  EXPECT_EQ(format_element(lit(F, "2/75")), "5^-2 * (2/3)");
  EXPECT_THROW(lit(F, "2 + * 3"), ParseError);
  EXPECT_THROW(lit(F, "2 + w"), ParseError);
  EXPECT_THROW(lit(F, "O(0)"), ParseError);
}

TEST(Literal, ExtensionRoundTrip) {
  const Field& E = Field::sqrt_p(5, 10);
  Element x = lit(E, "(2 + O(5^10)) + (3 + 5 + O(5^9))*s");
  EXPECT_TRUE(parse_element(E, format_element(x)).identical(x));
  const Field& U = Field::unramified(3, 8, 2);
  Element y = lit(U, "1 + 2*w + O(3^8)");
  EXPECT_TRUE(parse_element(U, format_element(y)).identical(y));
}

TEST(Extension, SqrtPSquaresToP) {
  const Field& E = Field::sqrt_p(5, 20);
  Element s = Element::sqrt_p(E);
  EXPECT_TRUE((s * s).identical(Element::integer(E, 5)));
  EXPECT_EQ(s.valuation(), Rational(1, 2));
  Element x = lit(E, "(1 + O(5^20)) + (2 + O(5^20))*s");
  Element y = x * x.inverse();
  EXPECT_TRUE(y.agrees_with(Element::one(E), 19));
  EXPECT_THROW(Element::sqrt_p(Q5()), MissingSqrtP);
}

TEST(Extension, UnramifiedInverseAndTeichmuller) {
  const Field& U = Field::unramified(5, 12, 2);
  EXPECT_EQ(U.residue_degree(), 2);
  Element x = lit(U, "3 + w + 5*w + O(5^12)");
  EXPECT_TRUE((x * x.inverse()).agrees_with(Element::one(U), 12));
  Element z = teichmuller(x);
  EXPECT_TRUE(z.pow(24).agrees_with(Element::one(U), 12));
  EXPECT_TRUE(z.agrees_with(x, 1));
}

TEST(Analytic, TeichmullerOracle) {
  const Field& F = Q5(10);
  Element z = teichmuller(Element::integer(F, 2));
  EXPECT_EQ(residue(z, 10), oracle::teichmuller(2, 5, 10));
  EXPECT_EQ(residue(z, 10), mpz_class(6139557));
  EXPECT_TRUE(z.pow(4).agrees_with(Element::one(F), 10));
}

TEST(Analytic, LogOfOnePlusPOracle) {
  const Field& F = Q5(10);
  Element L = Element::zero(F);
  Element v = iwasawa_log(Element::integer(F, 6), L);
  EXPECT_EQ(v.precision(), Rational(10));
  EXPECT_EQ(residue(v, 10), oracle::log_one_plus(5, 5, 10, 60));
  EXPECT_EQ(residue(v, 10), mpz_class(6970555));
}

TEST(Analytic, LogOfTwoOracle) {
  const Field& F = Q5(10);
  Element v = iwasawa_log(Element::integer(F, 2), Element::integer(F, 17));
  EXPECT_EQ(residue(v, 10), mpz_class(5659085));
}

TEST(Analytic, BranchValueAtP) {
  const Field& F = Q5(20);
  Element L = lit(F, "2 + 3*5 + O(5^20)");
  EXPECT_TRUE(iwasawa_log(Element::integer(F, 5), L).identical(L + Element::zero(F).with_precision(20)));
  Element x = iwasawa_log(Element::integer(F, 125).inverse(), L);
  EXPECT_TRUE(x.agrees_with(Element::integer(F, -3) * L, 20));
}

TEST(Analytic, LogIsHomomorphismProperty) {
  std::mt19937_64 rng(9);
  for (long p : {2L, 3L, 5L}) {
    const Field& F = Field::get(p, 16);
    Element L = Element(F, random_padic(F.base(), rng, 0, 0)).with_precision(16);
    for (int trial = 0; trial < 40; ++trial) {
      Padic a = random_padic(F.base(), rng, -2, 2), b = random_padic(F.base(), rng, -2, 2);
      if (a.is_zero() || b.is_zero()) continue;
      Element x(F, a), y(F, b);
      Element lhs = iwasawa_log(x * y, L);
      Element rhs = iwasawa_log(x, L) + iwasawa_log(y, L);
      Rational n = std::min(lhs.precision(), rhs.precision());
      EXPECT_TRUE(lhs.agrees_with(rhs, n - 1)) << format_element(lhs) << " vs " << format_element(rhs);
    }
  }
}

TEST(Analytic, ExpOracleAndRoundTrip) {
  const Field& F = Q5(10);
  Element e = exp_padic(Element::integer(F, 25));
  EXPECT_EQ(residue(e, 10), oracle::exp_series(25, 5, 10, 40));
  EXPECT_EQ(residue(e, 10), mpz_class(914401));
  const Field& G = Q5(20);
  Element u = Element::integer(G, 26);
  Element back = exp_padic(iwasawa_log(u, Element::zero(G)));
  EXPECT_TRUE(back.agrees_with(u, 18));
}

TEST(Analytic, ConvergenceDomain) {
  const Field& F = Q5(10);
  EXPECT_THROW(exp_padic(Element::one(F)), OutsideConvergenceDomain);
  EXPECT_NO_THROW(exp_padic(Element::integer(F, 5)));
  const Field& F2 = Field::get(2, 10);
  EXPECT_THROW(exp_padic(Element::integer(F2, 2)), OutsideConvergenceDomain);
  EXPECT_NO_THROW(exp_padic(Element::integer(F2, 4)));
  const Field& E = Field::sqrt_p(3, 10);
  EXPECT_THROW(exp_padic(Element::sqrt_p(E)), OutsideConvergenceDomain);
  EXPECT_NO_THROW(exp_padic(Element::integer(E, 3) * Element::sqrt_p(E)));
}
