#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "coclass/group_model.hpp"
#include "coclass/space_group.hpp"
#include "coclass/verify.hpp"

using namespace coclass;

namespace {

// Adjugate by cofactor expansion, independent of the Bareiss determinant.
Integer cofactor_det(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer sum = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a(0, c) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0, mk = 0; k < n; ++k)
        if (k != c) minor(r - 1, mk++) = a(r, k);
    const Integer term = a(0, c) * cofactor_det(minor);
    sum += (c % 2 == 0) ? term : Integer(-term);
  }
  return sum;
}

IntMatrix adjugate(const IntMatrix& a) {
  const std::size_t n = a.rows();
  IntMatrix adj(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c)
          if (c != j) minor(mr, mc++) = a(r, c);
        ++mr;
      }
      const Integer cof = cofactor_det(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : Integer(-cof);
    }
  return adj;
}

IntMatrix reduce_mod(IntMatrix m, unsigned p) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = detail::floor_mod(m(r, c), p);
  return m;
}

// Abelian invariants of a finite abelian p-group from its element-order census:
// #{g : g^(p^k) = 1} = prod_j p^min(k, e_j).
std::multiset<long long> invariants_from_census(const std::map<unsigned long long, std::size_t>& census, unsigned p) {
  std::vector<std::size_t> log_count;  // log_p of #{g : g^(p^k) = 1}
  for (unsigned long long pk = 1;; pk *= p) {
    std::size_t count = 0;
    for (const auto& [order, n] : census)
      if (pk % order == 0) count += n;
    std::size_t lg = 0;
    while (count > 1) {
      count /= p;
      ++lg;
    }
    log_count.push_back(lg);
    if (log_count.size() > 1 && log_count.back() == log_count[log_count.size() - 2]) break;
  }
  // Number of invariants with e_j >= k is log_count[k] - log_count[k-1].
  std::multiset<long long> out;
  for (std::size_t k = 1; k < log_count.size(); ++k) {
    const std::size_t at_least_k = log_count[k] - log_count[k - 1];
    const std::size_t at_least_next = k + 1 < log_count.size() ? log_count[k + 1] - log_count[k] : 0;
    for (std::size_t j = 0; j < at_least_k - at_least_next; ++j) out.insert(static_cast<long long>(ipow(p, static_cast<unsigned>(k))));
  }
  return out;
}

}  // namespace

TEST(SpaceGroupParams, Validation) {
  EXPECT_THROW(SpaceGroupParams(4, 1), std::invalid_argument);
  EXPECT_THROW(SpaceGroupParams(1, 1), std::invalid_argument);
  EXPECT_THROW(SpaceGroupParams(3, 0), std::invalid_argument);
  EXPECT_EQ(SpaceGroupParams(3, 2).dimension(), 6u);
  EXPECT_EQ(SpaceGroupParams(2, 3).dimension(), 4u);
  EXPECT_EQ(SpaceGroupParams(5, 1).dimension(), 4u);
}

TEST(CompanionCyclotomic, SmallCases) {
  EXPECT_EQ(companion_cyclotomic(SpaceGroupParams(2, 1)).c, (IntMatrix{{-1}}));
  EXPECT_EQ(companion_cyclotomic(SpaceGroupParams(3, 1)).c, (IntMatrix{{0, -1}, {1, -1}}));
}

TEST(CompanionCyclotomic, NinthRoots) {
  const IntMatrix c = companion_cyclotomic(SpaceGroupParams(3, 2)).c;
  ASSERT_EQ(c.rows(), 6u);
  EXPECT_TRUE(c.power(9).is_identity());
  const IntMatrix c3 = c * c * c;
  EXPECT_TRUE((c3 * c3 + c3 + IntMatrix::identity(6)).is_zero());
  EXPECT_FALSE(c3.is_identity());
}

TEST(CompanionCyclotomic, Invariants) {
  for (auto [p, x] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}, {7, 1}}) {
    const SpaceGroupParams params(p, x);
    const ThetaAction t = companion_cyclotomic(params);
    EXPECT_TRUE(t.c.power(params.point_order()).is_identity());
    EXPECT_FALSE(t.c.power(params.point_order() / p).is_identity());
    const Integer det = cofactor_det(t.minus_identity());
    EXPECT_TRUE(det == p || det == -Integer(p)) << p << "," << x;
  }
}

TEST(MaximalClassMatrix, Examples) {
  EXPECT_EQ(maximal_class_matrix(3), (IntMatrix{{1, -3}, {1, -2}}));
  EXPECT_EQ(maximal_class_matrix(2), (IntMatrix{{-1}}));
  const IntMatrix m5 = maximal_class_matrix(5);
  const auto chi = characteristic_polynomial(m5);
  EXPECT_EQ(chi, (std::vector<Integer>{1, 1, 1, 1, 1}));
  EXPECT_TRUE(m5.power(5).is_identity());
  EXPECT_THROW(maximal_class_matrix(6), std::invalid_argument);
}

TEST(MaximalClassMatrix, NilpotentModP) {
  for (unsigned p : {3u, 5u, 7u}) {
    const IntMatrix n = maximal_class_matrix(p) - IntMatrix::identity(p - 1);
    const IntMatrix top = n.power(p - 1);
    EXPECT_TRUE(reduce_mod(top, p).is_zero());
    IntMatrix quotient = top;
    for (std::size_t r = 0; r < top.rows(); ++r)
      for (std::size_t c = 0; c < top.cols(); ++c) quotient(r, c) = top(r, c) / p;
    EXPECT_NE(detail::floor_mod(determinant(quotient), p), 0) << "p=" << p;
  }
}

TEST(Filtration, LevelZeroAndIndex) {
  const ThetaAction t = companion_cyclotomic(SpaceGroupParams(3, 1));
  EXPECT_EQ(filtration(t, 0).lattice.basis(), Integer(3) * IntMatrix::identity(2));
  for (std::size_t i = 0; i <= 8; ++i) {
    const Lattice a = filtration(t, i).lattice, b = filtration(t, i + 1).lattice;
    EXPECT_EQ(lattice_index(a, b), 3);
    EXPECT_EQ(a.determinant(), Integer(ipow(3, static_cast<unsigned>(2 + i))));
  }
  for (std::size_t i = 0; i <= 6; ++i)
    EXPECT_EQ(filtration(t, i).lattice.scaled(3), filtration(t, i + 2).lattice) << "i=" << i;
}

TEST(Delta, Examples) {
  const ThetaAction t2 = companion_cyclotomic(SpaceGroupParams(2, 1));
  EXPECT_EQ(delta(t2), (IntMatrix{{2}}));
  const ThetaAction t3 = companion_cyclotomic(SpaceGroupParams(3, 1));
  const IntMatrix d3 = delta(t3);
  EXPECT_EQ(d3 * t3.c, t3.c * d3);
  for (std::size_t i = 0; i <= 6; ++i)
    EXPECT_EQ(filtration(t3, i).lattice.image(d3), filtration(t3, i + 1).lattice);
}

TEST(Delta, ScaledInverseIsIntegral) {
  for (auto [p, x] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {3, 1}, {3, 2}, {5, 1}}) {
    const IntMatrix d = delta(companion_cyclotomic(SpaceGroupParams(p, x)));
    const Integer det = cofactor_det(d);
    ASSERT_NE(det, 0);
    const IntMatrix scaled = Integer(p) * adjugate(d);
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c) EXPECT_EQ(scaled(r, c) % det, 0) << p << "," << x;
  }
}

TEST(QuotientGroup, Dihedral) {
  const ElementTable v4 = enumerate(quotient_group(SpaceGroupParams(2, 1), 0));
  EXPECT_EQ(v4.size(), 4u);
  EXPECT_TRUE(is_abelian(v4));
  EXPECT_EQ(order_census(v4), (std::map<unsigned long long, std::size_t>{{1, 1}, {2, 3}}));

  const ElementTable d8 = enumerate(quotient_group(SpaceGroupParams(2, 1), 1));
  EXPECT_EQ(d8.size(), 8u);
  EXPECT_FALSE(is_abelian(d8));
  EXPECT_EQ(order_census(d8).at(4), 2u);
}

TEST(QuotientGroup, ExtraspecialExponentThree) {
  const ElementTable g = enumerate(quotient_group(SpaceGroupParams(3, 1), 0));
  EXPECT_EQ(g.size(), 27u);
  EXPECT_FALSE(is_abelian(g));
  EXPECT_EQ(order_census(g), (std::map<unsigned long long, std::size_t>{{1, 1}, {3, 26}}));
}

TEST(QuotientGroup, OrderAndTranslationSubgroup) {
  for (auto [p, x, i] : std::vector<std::tuple<unsigned, unsigned, std::size_t>>{
           {2, 1, 0}, {2, 1, 3}, {3, 1, 2}, {2, 2, 1}, {5, 1, 1}, {3, 2, 0}}) {
    const SpaceGroupParams params(p, x);
    const FiniteGroup g = quotient_group(params, i);
    const unsigned e = static_cast<unsigned>(params.dimension() + x + i);
    EXPECT_EQ(g.order(), Integer(ipow(p, e)));

    const ElementTable t = enumerate(g);
    std::vector<std::size_t> translations;
    for (std::size_t k = 0; k < t.size(); ++k)
      if (t.element(k).back() == 0) translations.push_back(k);
    EXPECT_EQ(translations.size(), ipow(p, static_cast<unsigned>(params.dimension() + i)));
    std::map<unsigned long long, std::size_t> census;
    for (std::size_t a : translations) {
      for (std::size_t b : translations) ASSERT_EQ(t.multiply(a, b), t.multiply(b, a));
      ++census[element_order(t, a)];
    }
    const SmithForm s = snf(filtration(companion_cyclotomic(params), i).lattice.basis());
    std::multiset<long long> expected;
    for (std::size_t k = 0; k < s.d.rows(); ++k)
      if (s.d(k, k) != 1) expected.insert(s.d(k, k).convert_to<long long>());
    EXPECT_EQ(invariants_from_census(census, p), expected) << p << "," << x << "," << i;
  }
}

TEST(QuotientGroup, GroupAxiomsOnRandomTriples) {
  std::mt19937_64 rng(5);
  for (auto [p, x, i] : std::vector<std::tuple<unsigned, unsigned, std::size_t>>{{3, 1, 3}, {2, 2, 2}, {3, 2, 1}}) {
    const ElementTable t = enumerate(quotient_group(SpaceGroupParams(p, x), i));
    const FiniteGroup& g = t.group();
    for (int trial = 0; trial < 300; ++trial) {
      const Element& a = t.element(rng() % t.size());
      const Element& b = t.element(rng() % t.size());
      const Element& c = t.element(rng() % t.size());
      ASSERT_EQ(g.multiply(g.multiply(a, b), c), g.multiply(a, g.multiply(b, c)));
      ASSERT_EQ(g.multiply(a, g.inverse(a)), g.identity());
      ASSERT_EQ(g.multiply(g.identity(), a), a);
    }
  }
}

TEST(QuotientGroup, BudgetExceeded) {
  EXPECT_THROW(quotient_group(SpaceGroupParams(3, 2), 4, 1000), BudgetExceeded);
}

TEST(B3r, Family) {
  EXPECT_EQ(b3r(3).order(), 27);
  EXPECT_EQ(enumerate(b3r(3)).size(), 27u);
  EXPECT_EQ(b3r(4).descriptor().at("snf"), nlohmann::json({3, 9}));
  EXPECT_EQ(b3r(5).descriptor().at("snf"), nlohmann::json({9, 9}));
  EXPECT_EQ(b3r(6).descriptor().at("snf"), nlohmann::json({9, 27}));
  EXPECT_THROW(b3r(2), std::invalid_argument);
}

TEST(Wreath, OrdersByEnumeration) {
  EXPECT_EQ(enumerate(wreath_group(SpaceGroupParams(2, 2))).size(), 8u);
  EXPECT_EQ(enumerate(wreath_group(SpaceGroupParams(3, 2))).size(), 81u);
  EXPECT_EQ(enumerate(wreath_group(SpaceGroupParams(2, 3))).size(), 128u);
  EXPECT_EQ(WreathModel(SpaceGroupParams(3, 3)).order(), Integer(ipow(3, 13)));
}

TEST(Wreath, ActionIdentityAndBlockGenerator) {
  const SpaceGroupParams params(5, 1);
  const WreathModel w(params);
  const std::vector<long long> v{1, 2, 3, 4};
  EXPECT_EQ(wreath_act(params, w.identity_element(), v), v);
  WreathElement g = w.identity_element();
  g.base[0] = 1;
  EXPECT_EQ(wreath_action_matrix(params, g), reduce_mod(companion_cyclotomic(params).c, 5));
  EXPECT_THROW(wreath_act(params, g, std::vector<long long>{1, 2}), std::invalid_argument);
}

TEST(Wreath, ActionIsHomomorphism) {
  const SpaceGroupParams params(3, 2);
  const WreathModel w(params);
  const ElementTable t = enumerate(wreath_group(params));
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const WreathElement q1 = WreathElement::decode(t.element(rng() % t.size()));
    const WreathElement q2 = WreathElement::decode(t.element(rng() % t.size()));
    std::vector<long long> v(6);
    for (auto& c : v) c = static_cast<long long>(rng() % 3);
    ASSERT_EQ(wreath_act(params, w.compose(q1, q2), v), wreath_act(params, q1, wreath_act(params, q2, v)));
  }
}

TEST(Wreath, ActionMatricesGenerateFaithfulImage) {
  const SpaceGroupParams params(3, 2);
  const WreathModel w(params);
  std::vector<IntMatrix> gens;
  for (const Element& e : w.generators()) gens.push_back(wreath_action_matrix(params, WreathElement::decode(e)));
  std::set<std::vector<std::string>> seen;
  auto key = [](const IntMatrix& m) {
    std::vector<std::string> k;
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) k.push_back(m(r, c).str());
    return k;
  };
  std::vector<IntMatrix> frontier{IntMatrix::identity(6)};
  seen.insert(key(frontier.front()));
  for (std::size_t k = 0; k < frontier.size(); ++k)
    for (const IntMatrix& g : gens) {
      IntMatrix h = reduce_mod(frontier[k] * g, 3);
      if (seen.insert(key(h)).second) frontier.push_back(std::move(h));
    }
  EXPECT_EQ(frontier.size(), 81u);
}

TEST(EmbedTheta, Orders) {
  for (auto [p, x, order] : std::vector<std::tuple<unsigned, unsigned, unsigned long long>>{
           {2, 1, 2}, {3, 1, 3}, {2, 2, 4}, {3, 2, 9}, {2, 3, 8}}) {
    const SpaceGroupParams params(p, x);
    const WreathModel w(params);
    EXPECT_EQ(wreath_element_order(w, embed_theta(params)), order);
  }
  const SpaceGroupParams one(3, 1);
  const WreathElement t = embed_theta(one);
  EXPECT_EQ(t.base, std::vector<long long>{1});
  EXPECT_EQ(t.top, std::vector<long long>{0});
}

TEST(EmbedTheta, CharacteristicPolynomialModP) {
  for (auto [p, x] : std::vector<std::pair<unsigned, unsigned>>{{3, 2}, {2, 2}, {2, 3}, {5, 1}}) {
    const SpaceGroupParams params(p, x);
    const auto chi = characteristic_polynomial(wreath_action_matrix(params, embed_theta(params)));
    const auto phi = cyclotomic_coefficients(params);
    ASSERT_EQ(chi.size(), phi.size());
    for (std::size_t k = 0; k < chi.size(); ++k)
      EXPECT_EQ(detail::floor_mod(chi[k] - phi[k], p), 0) << p << "," << x << " k=" << k;
  }
  // y^6 + y^3 + 1 written out for p = 3, x = 2.
  const auto chi = characteristic_polynomial(wreath_action_matrix(SpaceGroupParams(3, 2), embed_theta(SpaceGroupParams(3, 2))));
  const std::vector<Integer> expected{1, 0, 0, 1, 0, 0, 1};
  for (std::size_t k = 0; k < 7; ++k) EXPECT_EQ(detail::floor_mod(chi[k] - expected[k], 3), 0);
}

TEST(TranslationQuotient, CoordinatesAndLift) {
  const SpaceGroupParams params(3, 2);
  const TranslationQuotient q(filtration(companion_cyclotomic(params), 3).lattice);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Integer> v(6);
    for (auto& c : v) c = static_cast<long long>(rng() % 200) - 100;
    const auto u = q.coordinates(v);
    std::vector<Integer> diff = q.lift(u);
    for (std::size_t k = 0; k < 6; ++k) diff[k] -= v[k];
    EXPECT_TRUE(q.lattice().contains(diff));
  }
}

TEST(FiltrationSuite, AllParametersPass) {
  for (auto [p, x] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2}}) {
    const FiltrationReport r = verify_filtration(SpaceGroupParams(p, x), 10);
    EXPECT_TRUE(r.passed()) << r.to_json();
    EXPECT_EQ(r.checks.size(), 1u + 5u * 10u + 5u);
  }
}

TEST(FiltrationSuite, LevelZeroOnly) {
  const FiltrationReport r = verify_filtration(SpaceGroupParams(3, 1), 0);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_EQ(r.checks.front().name, "N0 = pT");
  EXPECT_TRUE(r.passed());
}

TEST(FiltrationSuite, TamperedLatticeIsNamed) {
  const FiltrationReport r = verify_filtration(SpaceGroupParams(3, 1), 4, 2);
  EXPECT_FALSE(r.passed());
  const auto failed = r.to_json().at("failed");
  EXPECT_NE(std::find(failed.begin(), failed.end(), "index p @ i=1"), failed.end()) << failed;
  EXPECT_NE(std::find(failed.begin(), failed.end(), "(C-I) L_i = L_(i+1) @ i=2"), failed.end()) << failed;
  EXPECT_FALSE(verify_filtration(SpaceGroupParams(2, 1), 3, 0).passed());
}

TEST(DeltaCheck, AllLevels) {
  for (auto [p, x] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {5, 1}}) {
    const auto r = check_delta(SpaceGroupParams(p, x), 4, 50, 1);
    EXPECT_TRUE(r.passed()) << r.to_json();
    EXPECT_EQ(r.trials, 200u);
  }
}
