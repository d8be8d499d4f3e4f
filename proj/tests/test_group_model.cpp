#include <gtest/gtest.h>

#include <map>

#include "coclass/group_model.hpp"

using namespace coclass;

using Census = std::map<unsigned long long, std::size_t>;

TEST(Enumerate, Sizes) {
  EXPECT_EQ(enumerate(elementary_abelian(2, 2)).size(), 4u);
  EXPECT_EQ(enumerate(b3r(3)).size(), 27u);
  EXPECT_EQ(enumerate(quotient_group(SpaceGroupParams(2, 1), 3)).size(), 32u);
  EXPECT_EQ(enumerate(cyclic_group(3, 9)).size(), 9u);
}

TEST(Enumerate, CanonicalOrdering) {
  const FiniteGroup g = quotient_group(SpaceGroupParams(3, 1), 2);
  const ElementTable a = enumerate(g), b = enumerate(g);
  EXPECT_EQ(a.elements(), b.elements());
  EXPECT_EQ(a.identity_index(), 0u);
  EXPECT_EQ(a.element(0), g.identity());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(*a.index_of(a.element(k)), k);
}

TEST(Enumerate, BudgetExceeded) {
  EXPECT_THROW(enumerate(b3r(5), 100), BudgetExceeded);
  EXPECT_THROW(b3r(7, 1000), BudgetExceeded);
}

TEST(Enumerate, TableAgreesWithGroupLaw) {
  const ElementTable t = enumerate(b3r(4));
  const FiniteGroup& g = t.group();
  for (std::size_t a = 0; a < t.size(); a += 5)
    for (std::size_t b = 0; b < t.size(); b += 3) {
      EXPECT_EQ(t.element(t.multiply(a, b)), g.multiply(t.element(a), t.element(b)));
      EXPECT_EQ(t.multiply(a, t.inverse(a)), t.identity_index());
    }
}

TEST(SubgroupClosure, TrivialCases) {
  const ElementTable t = enumerate(b3r(3));
  EXPECT_EQ(subgroup_closure(t, {t.identity_index()}), std::vector<std::size_t>{t.identity_index()});
  EXPECT_EQ(subgroup_closure(t, t.generators()).size(), t.size());
}

TEST(SubgroupClosure, FrattiniOfExtraspecialIsCenter) {
  const ElementTable t = enumerate(b3r(3));
  std::vector<std::size_t> gens;
  for (std::size_t s : t.generators()) gens.push_back(t.power(s, 3));
  const auto& s = t.generators();
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b)
      gens.push_back(t.multiply(t.multiply(s[a], s[b]), t.multiply(t.inverse(s[a]), t.inverse(s[b]))));
  const auto phi = subgroup_closure(t, gens);
  EXPECT_EQ(phi.size(), 3u);
  // Every element of that subgroup is central.
  for (std::size_t z : phi)
    for (std::size_t g = 0; g < t.size(); ++g) EXPECT_EQ(t.multiply(z, g), t.multiply(g, z));
  EXPECT_EQ(frattini_subgroup(t), phi);
}

TEST(FrattiniRank, Examples) {
  EXPECT_EQ(frattini_rank(enumerate(elementary_abelian(3, 3))), 3u);
  EXPECT_EQ(frattini_rank(enumerate(elementary_abelian(2, 4))), 4u);
  EXPECT_EQ(frattini_rank(enumerate(cyclic_group(2, 4))), 1u);
  for (std::size_t i = 0; i <= 2; ++i)
    EXPECT_EQ(frattini_rank(enumerate(quotient_group(SpaceGroupParams(3, 1), i))), 2u) << "i=" << i;
  for (std::size_t i = 0; i <= 4; ++i)
    EXPECT_EQ(frattini_rank(enumerate(quotient_group(SpaceGroupParams(2, 1), i))), 2u) << "i=" << i;
}

TEST(FrattiniRank, BoundedByLogOrder) {
  for (const FiniteGroup& g : {b3r(4), quotient_group(SpaceGroupParams(2, 2), 1), wreath_group(SpaceGroupParams(3, 2))}) {
    const ElementTable t = enumerate(g);
    EXPECT_LE(frattini_rank(t), log_base(t.size(), g.prime()));
  }
}

TEST(MinimalGenerators, GenerateTheGroup) {
  for (const FiniteGroup& g : {b3r(5), quotient_group(SpaceGroupParams(2, 1), 4), elementary_abelian(5, 2)}) {
    const ElementTable t = enumerate(g);
    const auto gens = minimal_generators(t);
    EXPECT_EQ(gens.size(), frattini_rank(t));
    EXPECT_EQ(subgroup_closure(t, gens).size(), t.size());
  }
}

TEST(OrderCensus, Fingerprints) {
  EXPECT_EQ(order_census(enumerate(elementary_abelian(2, 2))), (Census{{1, 1}, {2, 3}}));
  EXPECT_EQ(order_census(enumerate(quotient_group(SpaceGroupParams(2, 1), 1))), (Census{{1, 1}, {2, 5}, {4, 2}}));
  EXPECT_EQ(order_census(enumerate(b3r(3))), (Census{{1, 1}, {3, 26}}));
  EXPECT_EQ(order_census(enumerate(cyclic_group(2, 4))), (Census{{1, 1}, {2, 1}, {4, 2}}));
}

TEST(Permuted, RelabelsConsistently) {
  const ElementTable t = enumerate(b3r(3));
  std::vector<std::size_t> perm(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) perm[k] = (k * 5 + 7) % t.size();
  const ElementTable u = t.permuted(perm);
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = 0; b < t.size(); ++b) ASSERT_EQ(u.multiply(perm[a], perm[b]), perm[t.multiply(a, b)]);
  EXPECT_EQ(u.identity_index(), perm[t.identity_index()]);
}
