#include <gtest/gtest.h>

#include "loglift/builtin.hpp"
#include "loglift/literal.hpp"
#include "loglift/random.hpp"

using namespace loglift;

namespace {

const Field& Q5(long cap = 20) { return Field::get(5, cap); }

Element lit(const Field& F, const char* s) { return parse_element(F, s); }

Matrix diag(const Field& F, std::vector<Element> d) { return Matrix::diagonal(F, d); }

Matrix upper(const Field& F, const Element& x) {
  Matrix m = Matrix::identity(F, 2);
  m(0, 1) = x;
  return m;
}

const std::vector<std::vector<std::size_t>> kCompositions = {{1, 1}, {2}, {1, 1, 1}, {2, 1}, {1, 2}, {3}};

}  // namespace

TEST(Lift, BreuilAtDiagP1) {
  const Field& F = Q5();
  Element l = lit(F, "2 + O(5^10)");
  LiftedRep rep(breuil_module(F), breuil_log(l));
  Matrix got = rep.eval_torus(diag(F, {Element::integer(F, 5), Element::one(F)}));
  EXPECT_TRUE(approx_equal(got, upper(F, l), 0)) << format_matrix(got);
}

TEST(Lift, BreuilAtUnits) {
  const Field& F = Q5();
  Rng rng(1);
  LiftedRep rep(breuil_module(F), breuil_log(Element::integer(F, 7)));
  for (int trial = 0; trial < 20; ++trial) {
    // The series log extended to units: log(w) = log(w^(p-1)) / (p-1).
    Element u = random_unit(F, rng), v = random_unit(F, rng);
    Matrix got = rep.eval_torus(diag(F, {u, v}));
    Matrix expect = upper(F, log_series((u / v).pow(4)) / Element::integer(F, 4));
    EXPECT_GE(relative_agreement(got, expect), Rational(F.cap() - 2));
  }
}

TEST(Lift, BreuilWeightTwist) {
  const Field& F = Q5();
  Element l = Element::integer(F, 3);
  LiftedRep rep(breuil_module(F, 4), breuil_log(l));
  // diag(1, p) acts by p^(k-2) [[1, -L], [0, 1]].
  Matrix got = rep.eval_torus(diag(F, {Element::one(F), Element::integer(F, 5)}));
  Matrix expect = Element::integer(F, 25) * upper(F, -l);
  EXPECT_TRUE(approx_equal(got, expect, 0)) << format_matrix(got);
}

TEST(Lift, BreuilUpperTriangularElement) {
  // g = [[p, 1], [0, 1]] = [[1, 1], [0, 1]] diag(p, 1) and e_12 acts by zero.
  const Field& F = Q5();
  Element l = lit(F, "2 + O(5^10)");
  LiftedRep rep(breuil_module(F), breuil_log(l));
  Matrix g = Matrix::from_ints(F, {{5, 1}, {0, 1}});
  EXPECT_TRUE(approx_equal(rep.eval_unipotent(upper(F, Element::one(F))), Matrix::identity(F, 2), 0));
  EXPECT_TRUE(approx_equal(rep.eval(g), upper(F, l), 0));
}

TEST(Lift, SchraenClosedForm) {
  const Field& F = Q5();
  Rng rng(9);
  Element l = lit(F, "3 + 5 + O(5^20)"), lp = lit(F, "4 + 5^3 + O(5^20)");
  LiftedRep rep(schraen_module(F), schraen_log(l, lp));
  for (int trial = 0; trial < 10; ++trial) {
    auto t = random_torus(F, 3, rng);
    auto x = schraen_closed_form(l, lp, t);
    Matrix expect = Matrix::identity(F, 3);
    expect(0, 1) = Element::integer(F, -2) * x[0] + x[1] + x[2];
    expect(0, 2) = -x[0] - x[1] + Element::integer(F, 2) * x[2];
    Matrix got = rep.eval_torus(t);
    EXPECT_GE(relative_agreement(got, expect), Rational(F.cap() - 2)) << trial;
  }
}

TEST(Lift, SchraenThirdBranchDoesNotMatterOnTheModule) {
  const Field& F = Q5();
  Rng rng(10);
  Element l = Element::integer(F, 3), lp = Element::integer(F, 8);
  LiftedRep a(schraen_module(F), schraen_log(l, lp, lp));
  LiftedRep b(schraen_module(F), schraen_log(l, lp, Element::zero(F)));
  for (int trial = 0; trial < 10; ++trial) {
    auto t = random_torus(F, 3, rng);
    EXPECT_GE(relative_agreement(a.eval_torus(t), b.eval_torus(t)), Rational(F.cap() - 2));
  }
}

TEST(Lift, StandardModuleLiftsToTheIdentityRepresentation) {
  const Field& F = Q5();
  Rng rng(14);
  for (const auto& comp : kCompositions) {
    GLnContext ctx(comp);
    LiftedRep rep(standard_module(ctx, F), random_log(ctx, F, rng));
    LiftedRep dual(dual_module(standard_module(ctx, F)), random_log(ctx, F, rng));
    for (int trial = 0; trial < 5; ++trial) {
      Matrix g = random_parabolic(ctx, F, rng);
      EXPECT_GE(relative_agreement(rep.eval(g), g), Rational(F.cap() - 4));
      EXPECT_GE(relative_agreement(dual.eval(g), inverse(g).transpose()), Rational(F.cap() - 4));
    }
  }
}

TEST(Lift, HomomorphismProperty) {
  const Field& F = Q5();
  Rng rng(15);
  for (const auto& comp : kCompositions) {
    GLnContext ctx(comp);
    for (int m = 0; m < 2; ++m) {
      LiftedRep rep(random_module(ctx, F, rng), random_log(ctx, F, rng));
      for (int trial = 0; trial < 5; ++trial) {
        Matrix g1 = random_parabolic(ctx, F, rng), g2 = random_parabolic(ctx, F, rng);
        Rational agreement = relative_agreement(rep.eval(g1 * g2), rep.eval(g1) * rep.eval(g2));
        EXPECT_GE(agreement, Rational(F.cap() - 4));
      }
    }
  }
}

TEST(Lift, AdCompatibility) {
  const Field& F = Q5();
  Rng rng(16);
  for (const auto& comp : kCompositions) {
    GLnContext ctx(comp);
    LiftedRep rep(random_module(ctx, F, rng), random_log(ctx, F, rng));
    for (int trial = 0; trial < 3; ++trial) {
      Matrix h = random_parabolic(ctx, F, rng);
      Matrix rh = rep.eval(h);
      for (const Root& r : ctx.parabolic_roots()) {
        Matrix x = Matrix::elementary(F, ctx.n(), r.i, r.j, Element::one(F));
        Matrix lhs = rep.phi(ad_action(h, x)) * rh;
        Matrix rhs = rh * rep.phi(x);
        EXPECT_GE(relative_agreement(lhs, rhs), Rational(F.cap() - 4));
      }
    }
  }
}

TEST(Lift, LeviPivotRulesAgree) {
  const Field& F = Q5();
  Rng rng(17);
  for (const auto& comp : std::vector<std::vector<std::size_t>>{{2}, {2, 1}, {3}}) {
    GLnContext ctx(comp);
    LiftedRep rep(random_module(ctx, F, rng), random_log(ctx, F, rng));
    for (int trial = 0; trial < 5; ++trial) {
      Matrix h = random_special_levi(ctx, F, rng);
      Matrix a = rep.eval_levi(h, PivotRule::MinValuation);
      for (auto rule : {PivotRule::FirstNonzero, PivotRule::LastNonzero})
        EXPECT_GE(relative_agreement(a, rep.eval_levi(h, rule)), Rational(F.cap() - 4));
    }
  }
}

TEST(Lift, FactorOrderDoesNotMatter) {
  const Field& F = Q5();
  Rng rng(18);
  GLnContext ctx = GLnContext::borel(3);
  LiftedRep rep(random_module(ctx, F, rng), random_log(ctx, F, rng));
  for (int trial = 0; trial < 5; ++trial) {
    Matrix g = random_parabolic(ctx, F, rng);
    EXPECT_GE(relative_agreement(rep.eval(g, PivotRule::MinValuation, FactorOrder::UnipotentFirst),
                                 rep.eval(g, PivotRule::MinValuation, FactorOrder::LeviFirst)),
              Rational(F.cap() - 4));
  }
}

TEST(Lift, ChangeOfLogarithm) {
  const Field& F = Q5();
  Rng rng(19);
  GLnContext ctx = GLnContext::borel(3);
  LiftedRep rep(random_module(ctx, F, rng), random_log(ctx, F, rng));
  TorusLogarithm other = random_log(ctx, F, rng);
  for (int trial = 0; trial < 5; ++trial) {
    EXPECT_NO_THROW(change_log_factor(rep, other, random_torus(F, 3, rng)));
    Matrix e = change_log_factor(rep, other, random_unit_torus(F, 3, rng));
    EXPECT_TRUE(approx_equal(e, Matrix::identity(F, rep.dim()), 0));
  }
}

TEST(Lift, IncompatibleLogarithmIsRejected) {
  const Field& F = Q5();
  Rng rng(20);
  GLnContext ctx({2});
  FdPModule w = block_trace_module(ctx, F, 2, rng);
  std::map<Root, Matrix> act = w.images();
  Matrix n = Matrix::from_ints(F, {{0, 1}, {0, 0}});
  act.at({0, 0}) = n;
  act.at({1, 1}) = n;
  FdPModule m(ctx, F, 2, act);
  EXPECT_NO_THROW(LiftedRep(m, TorusLogarithm::standard(F, {Element::integer(F, 2), Element::integer(F, 2)})));
  EXPECT_THROW(LiftedRep(m, TorusLogarithm::standard(F, {Element::integer(F, 2), Element::integer(F, 3)})),
               IncompatibleLogarithm);
}

TEST(Lift, NilpotencyIsRequired) {
  const Field& F = Q5();
  std::map<Root, Matrix> act;
  act.emplace(Root{0, 1}, Matrix::from_ints(F, {{1}}));
  FdPModule m(GLnContext::borel(2), F, 1, act);
  EXPECT_THROW(LiftedRep(m, breuil_log(Element::one(F))), NotNilpotentAction);
}

TEST(Lift, SmoothCharacter) {
  const Field& F = Q5();
  GLnContext ctx = GLnContext::borel(2);
  EXPECT_THROW(SmoothCharacter::alpha(ctx, F, 3), MissingSqrtP);
  SmoothCharacter a4 = SmoothCharacter::alpha(ctx, F, 4);
  Matrix g = Matrix::from_ints(F, {{5, 1}, {0, 25}});
  // |det|^{-(k-2)/2} = 5^3 for k = 4.
  EXPECT_TRUE(a4.evaluate(g).agrees_with(Element::integer(F, 125), 18));
  const Field& E = Field::sqrt_p(5, 20);
  SmoothCharacter a3 = SmoothCharacter::alpha(ctx, E, 3);
  Element s = Element::sqrt_p(E);
  EXPECT_TRUE(a3.evaluate(Matrix::from_ints(E, {{5, 0}, {0, 1}})).agrees_with(s, 18));
  LiftedRep rep(breuil_module(E, 3), breuil_log(Element::integer(E, 2)));
  Matrix ge = Matrix::from_ints(E, {{5, 1}, {0, 1}});
  Matrix tw = smooth_twist(rep.eval(ge), a3, ge);
  EXPECT_TRUE(approx_equal(tw, s * rep.eval(ge), 0));
}
