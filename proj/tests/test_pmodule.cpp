#include <gtest/gtest.h>

#include "loglift/builtin.hpp"
#include "loglift/random.hpp"

using namespace loglift;

namespace {

const Field& Q5(long cap = 20) { return Field::get(5, cap); }

}  // namespace

TEST(PModule, BreuilModuleIsInCategory) {
  const Field& F = Q5();
  for (long k : {2L, 3L, 4L}) {
    FdPModule m = breuil_module(F, k);
    EXPECT_TRUE(check_lie_hom(m).valid());
    CategoryReport rep = category_membership(m);
    EXPECT_TRUE(rep.member()) << rep.failure;
    PrimaryDecomposition dec = weight_decomposition(m);
    ASSERT_EQ(dec.components.size(), 1u);
    EXPECT_EQ(dec.components[0].weight, (std::vector<long>{0, k - 2}));
    EXPECT_EQ(dec.components[0].basis.cols(), 2u);
  }
}

TEST(PModule, SchraenModuleIsInCategory) {
  FdPModule m = schraen_module(Q5());
  EXPECT_TRUE(check_lie_hom(m).valid());
  EXPECT_TRUE(category_membership(m).member());
  EXPECT_EQ(weight_decomposition(m).multiplicity({0, 0, 0}), 3u);
}

TEST(PModule, StandardWeights) {
  const Field& F = Q5();
  FdPModule v = standard_module(GLnContext::borel(3), F);
  EXPECT_TRUE(check_lie_hom(v).valid());
  PrimaryDecomposition dec = weight_decomposition(v);
  EXPECT_EQ(dec.multiplicity({1, 0, 0}), 1u);
  EXPECT_EQ(dec.multiplicity({0, 1, 0}), 1u);
  EXPECT_EQ(dec.multiplicity({0, 0, 1}), 1u);
  EXPECT_EQ(unipotent_depth(v), std::optional<std::size_t>(3));
}

TEST(PModule, SwappedImagesBreakTheBracket) {
  const Field& F = Q5();
  FdPModule v = standard_module(GLnContext::borel(2), F);
  std::map<Root, Matrix> act = v.images();
  std::swap(act.at({0, 0}), act.at({1, 1}));
  FdPModule bad(v.ctx(), F, 2, act);
  LieHomReport rep = check_lie_hom(bad);
  EXPECT_FALSE(rep.valid());
}

TEST(PModule, NonSplitAndNonNilpotentModulesFail) {
  const Field& F = Q5();
  GLnContext ctx = GLnContext::borel(2);
  std::map<Root, Matrix> act;
  act.emplace(Root{0, 0}, Matrix::from_ints(F, {{0, -1}, {1, 0}}));
  act.emplace(Root{1, 1}, Matrix::from_ints(F, {{0, -1}, {1, 0}}));
  CategoryReport rep = category_membership(FdPModule(ctx, F, 2, act));
  EXPECT_FALSE(rep.split);
  EXPECT_FALSE(rep.member());

  std::map<Root, Matrix> act2;
  act2.emplace(Root{0, 1}, Matrix::from_ints(F, {{1}}));
  CategoryReport rep2 = category_membership(FdPModule(ctx, F, 1, act2));
  EXPECT_FALSE(rep2.unipotent_nilpotent);
  EXPECT_FALSE(rep2.member());
}

TEST(PModule, GeneratorOutsideParabolicIsASchemaError) {
  const Field& F = Q5();
  std::map<Root, Matrix> act;
  act.emplace(Root{1, 0}, Matrix::from_ints(F, {{0}}));
  EXPECT_THROW(FdPModule(GLnContext::borel(2), F, 1, act), SchemaError);
}

TEST(PModule, ConstructionsPreserveTheCategory) {
  const Field& F = Q5();
  Rng rng(12);
  for (auto comp : std::vector<std::vector<std::size_t>>{{1, 1}, {2}, {1, 1, 1}, {2, 1}, {1, 2}, {3}}) {
    GLnContext ctx(comp);
    for (int trial = 0; trial < 4; ++trial) {
      FdPModule a = random_module(ctx, F, rng, 3), b = random_module(ctx, F, rng, 2);
      for (const FdPModule& m : {a, tensor_product(a, b), dual_module(a), direct_sum(a, b)}) {
        EXPECT_TRUE(check_lie_hom(m).valid());
        CategoryReport rep = category_membership(m);
        EXPECT_TRUE(rep.member()) << rep.failure;
      }
    }
  }
}

TEST(PModule, SubmoduleAndQuotient) {
  const Field& F = Q5();
  FdPModule v = standard_module(GLnContext::borel(3), F);
  Matrix line = Matrix::from_ints(F, {{1}, {0}, {0}});
  EXPECT_TRUE(is_submodule(v, line));
  EXPECT_FALSE(is_submodule(v, Matrix::from_ints(F, {{0}, {0}, {1}})));
  FdPModule sub = submodule(v, line);
  EXPECT_EQ(weight_decomposition(sub).multiplicity({1, 0, 0}), 1u);
  FdPModule q = quotient_module(v, line);
  EXPECT_EQ(q.dim(), 2u);
  EXPECT_TRUE(check_lie_hom(q).valid());
  EXPECT_EQ(weight_decomposition(q).multiplicity({0, 1, 0}), 1u);
}

TEST(PModule, SemisimpleFiltrationReachesTheModule) {
  const Field& F = Q5();
  FdPModule m = breuil_module(F);
  auto chain = semisimple_filtration(m);
  ASSERT_EQ(chain.size(), 2u);
  EXPECT_EQ(chain[0].cols(), 1u);
  EXPECT_EQ(chain[1].cols(), 2u);
  EXPECT_TRUE(is_submodule(m, chain[0]));
}
