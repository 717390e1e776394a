#include <gtest/gtest.h>

#include "loglift/builtin.hpp"
#include "loglift/literal.hpp"
#include "loglift/random.hpp"

using namespace loglift;

namespace {

const Field& Q5(long cap = 20) { return Field::get(5, cap); }

Element lit(const Field& F, const char* s) { return parse_element(F, s); }

bool agree(const std::vector<Element>& a, const std::vector<Element>& b, long digits) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].agrees_with(b[i], digits)) return false;
  return true;
}

}  // namespace

TEST(TorusLog, StandardBranches) {
  const Field& F = Q5();
  Element l1 = lit(F, "2 + O(5^10)"), l2 = lit(F, "7");
  TorusLogarithm log = TorusLogarithm::standard(F, {l1, l2});
  auto x = log.evaluate({Element::integer(F, 5), Element::one(F)});
  EXPECT_TRUE(x[0].agrees_with(l1, 10));
  EXPECT_TRUE(x[1].is_zero());
  Element u = Element::integer(F, 6);
  auto y = log.evaluate({u, Element::integer(F, 25)});
  EXPECT_TRUE(y[0].agrees_with(log_series(u), 18));
  EXPECT_TRUE(y[1].agrees_with(Element::integer(F, 14), 18));
  EXPECT_TRUE(approx_equal(log.valuation_form(), Matrix::diagonal(F, {l1, l2}), 0));
}

TEST(TorusLog, HomomorphismProperty) {
  const Field& F = Q5();
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    TorusLogarithm log = random_log(GLnContext::borel(3), F, rng);
    auto s = random_torus(F, 3, rng), t = random_torus(F, 3, rng);
    std::vector<Element> st;
    for (std::size_t i = 0; i < 3; ++i) st.push_back(s[i] * t[i]);
    auto ls = log.evaluate(s), lt = log.evaluate(t), lst = log.evaluate(st);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(lst[i].agrees_with(ls[i] + lt[i], F.cap() - 4)) << trial;
  }
}

TEST(TorusLog, SchraenBasisInverse) {
  const Field& F = Q5();
  TorusLogarithm log = schraen_log(Element::integer(F, 3), Element::integer(F, 11));
  Matrix ainv = log.basis_inverse();
  // Second column (-1/3, -2/3, 0), third column (1, 1, 1).
  EXPECT_TRUE(ainv(0, 1).agrees_with(Element::rational(F, -1, 3), 18));
  EXPECT_TRUE(ainv(1, 1).agrees_with(Element::rational(F, -2, 3), 18));
  EXPECT_TRUE(ainv(2, 1).is_zero());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(ainv(i, 2).agrees_with(Element::one(F), 18));
}

TEST(TorusLog, SchraenClosedForm) {
  const Field& F = Q5();
  Rng rng(5);
  Element l = lit(F, "3 + 2*5 + O(5^20)"), lp = lit(F, "1 + 5^2 + O(5^20)");
  TorusLogarithm log = schraen_log(l, lp);
  for (int trial = 0; trial < 20; ++trial) {
    auto t = random_torus(F, 3, rng);
    EXPECT_TRUE(agree(log.evaluate(t), schraen_closed_form(l, lp, t), F.cap() - 2)) << trial;
  }
}

TEST(TorusLog, TorsorProperty) {
  const Field& F = Q5();
  Rng rng(6);
  GLnContext ctx = GLnContext::borel(3);
  for (int trial = 0; trial < 10; ++trial) {
    TorusLogarithm a = random_log(ctx, F, rng), b = random_log(ctx, F, rng);
    LogDifference d = log_difference(a, b);
    auto u = random_unit_torus(F, 3, rng);
    auto du = d.apply(valuation_vector(u));
    auto au = a.evaluate(u), bu = b.evaluate(u);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_TRUE(du[i].is_exact_zero());
      EXPECT_TRUE((au[i] - bu[i]).is_zero());
    }
    auto t = random_torus(F, 3, rng);
    auto at = a.evaluate(t), bt = b.evaluate(t), dt = d.apply(valuation_vector(t));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE((at[i] - bt[i]).agrees_with(dt[i], F.cap() - 4));
    TorusLogarithm back = shifted(b, d);
    EXPECT_TRUE(agree(back.evaluate(t), at, F.cap() - 4));
  }
}

TEST(TorusLog, SubtorusRestriction) {
  const Field& F = Q5();
  Element l = Element::integer(F, 4);
  IntMatrix diag_emb = {{1}, {1}};
  TorusLogarithm r = restrict_to_subtorus(TorusLogarithm::standard(F, {l, l}), diag_emb);
  auto s = std::vector<Element>{Element::integer(F, 50)};
  auto t = embed_subtorus(diag_emb, s);
  EXPECT_TRUE(t[1].agrees_with(Element::integer(F, 50), 18));
  EXPECT_TRUE(r.evaluate(s)[0].agrees_with(iwasawa_log(s[0], l), 18));
  EXPECT_THROW(restrict_to_subtorus(TorusLogarithm::standard(F, {l, Element::integer(F, 9)}), diag_emb),
               IncompatibleSubtorus);

  // Coordinate subtori always restrict.
  TorusLogarithm std2 = TorusLogarithm::standard(F, {Element::integer(F, 2), Element::integer(F, 3)});
  IntMatrix first = {{1}, {0}};
  TorusLogarithm r1 = restrict_to_subtorus(std2, first);
  auto x = std::vector<Element>{Element::integer(F, 75)};
  EXPECT_TRUE(r1.evaluate(x)[0].agrees_with(std2.evaluate(embed_subtorus(first, x))[0], 18));
}
