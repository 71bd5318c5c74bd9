#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "tfp/canonical.hpp"
#include "tfp/comb_map.hpp"
#include "tfp/enumerate.hpp"
#include "tfp/errors.hpp"
#include "tfp/permutation.hpp"

using namespace tfp;

TEST(Permutation, IdentityInverseAndComposition) {
  auto s = Permutation::from_cycles(5, {{0, 2, 4}, {1, 3}});
  EXPECT_EQ(s.after(s.inverse()), Permutation::identity(5));
  EXPECT_EQ(s.cycle_count(), 2);
  EXPECT_EQ(s.cycles(), (std::vector<std::vector<int>>{{0, 2, 4}, {1, 3}}));
  auto t = Permutation::from_cycles(5, {{0, 1}});
  // after: s(t(i))
  EXPECT_EQ(s.after(t)(0), s(1));
  EXPECT_FALSE(s.is_involution());
  EXPECT_TRUE(Permutation::from_cycles(4, {{0, 1}, {2, 3}}).is_fixed_point_free());
  EXPECT_EQ(all_permutations(4).size(), 24u);
  EXPECT_THROW(Permutation({0, 0, 1}), std::exception);
}

TEST(CombMap, SelfLoopMap) {
  auto m = CombMap::build({{0, 1}}, {{0, 1}});
  EXPECT_EQ(m.vertices(), 1);
  EXPECT_EQ(m.gamma(), 1);
  EXPECT_EQ(m.edges_count(), 1);
}

TEST(CombMap, MelonFromPairs) {
  auto m = CombMap::build({{0, 1, 2}, {3, 4, 5}}, {{0, 3}, {1, 4}, {2, 5}});
  EXPECT_TRUE(is_melon(m));
  EXPECT_EQ(m, melon(3, Permutation::identity(3)));
}

TEST(CombMap, ValidationErrors) {
  EXPECT_THROW(CombMap::build({{0, 1}}, {{0, 2}}), MapError);
  EXPECT_THROW(CombMap::from_pairing({{0, 1}}, {0, 1}), MapError);     // fixed points
  EXPECT_THROW(CombMap::from_pairing({{0, 1}, {1}}, {1, 0}), MapError);  // label twice
}

TEST(CombMap, CyclesAreNormalized) {
  auto m = CombMap::from_pairing({{5, 3, 4}, {2, 0, 1}}, {3, 4, 5, 0, 1, 2});
  EXPECT_EQ(m.cycles()[0], (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(m.cycles()[1], (std::vector<int>{3, 4, 5}));
}

TEST(CombMap, MelonOfDegreeTwo) {
  auto m = melon(2, Permutation::identity(2));
  EXPECT_EQ(m.pi(), Permutation::from_cycles(4, {{0, 1}, {2, 3}}));
  EXPECT_EQ(m.alpha(), Permutation::from_cycles(4, {{0, 2}, {1, 3}}));
  EXPECT_EQ(melon(3, Permutation::identity(3)).gamma(), 1);
}

TEST(CombMap, MelonClassesAtDegreeFour) {
  std::set<CanonicalCode> codes;
  for (const auto& s : all_permutations(4)) codes.insert(canonical_code(melon(4, s)));
  EXPECT_EQ(codes.size(), 6u);
}

TEST(CombMap, Bouquet) {
  auto b = bouquet(4, Permutation::identity(4));
  EXPECT_EQ(b.pi(), Permutation::from_cycles(4, {{0, 1, 2, 3}}));
  EXPECT_EQ(b.alpha(), Permutation::from_cycles(4, {{0, 1}, {2, 3}}));
  EXPECT_EQ(b.gamma(), 1);
  EXPECT_THROW(bouquet(3, Permutation::identity(3)), MapError);
}

TEST(CombMap, MulticycleClassCount) {
  for (int n = 1; n <= 3; ++n) {
    std::set<CanonicalCode> codes;
    std::vector<Permutation> two = all_permutations(2);
    std::vector<Permutation> sig(static_cast<std::size_t>(n));
    for (int mask = 0; mask < (1 << n); ++mask) {
      for (int v = 0; v < n; ++v) sig[static_cast<std::size_t>(v)] = two[static_cast<std::size_t>((mask >> v) & 1)];
      auto m = multicycle(4, n, sig);
      EXPECT_EQ(m.gamma(), 1);
      codes.insert(canonical_code(m));
    }
    EXPECT_EQ(codes.size(), std::size_t{1} << n) << "n=" << n;
  }
}

TEST(CombMap, OddMulticycleLengthOneIsMelon) {
  auto m = odd_multicycle(3, 1);
  EXPECT_EQ(m.vertices(), 2);
  EXPECT_TRUE(is_melon(m));
  auto m2 = odd_multicycle(3, 2);
  EXPECT_EQ(m2.vertices(), 4);
  EXPECT_EQ(m2.uniform_degree(), 3);
  EXPECT_EQ(m2.gamma(), 1);
}

TEST(CombMap, SwitchVariants) {
  auto m = melon(2, Permutation::identity(2));
  auto a = switch_edges(m, {0, 2}, {1, 3}, SwitchVariant::A);
  EXPECT_EQ(a.alpha(), Permutation::from_cycles(4, {{0, 1}, {2, 3}}));
  EXPECT_EQ(a.gamma(), 2);
  auto b = switch_edges(m, {0, 2}, {1, 3}, SwitchVariant::B);
  EXPECT_EQ(b.alpha(), Permutation::from_cycles(4, {{0, 3}, {1, 2}}));
  EXPECT_EQ(b.gamma(), 1);
}

TEST(CombMap, SwitchThenInverseSwitch) {
  std::mt19937_64 g(3);
  for (const auto& m : enumerate_bn(3, 4)) {
    auto es = m.edges();
    std::uniform_int_distribution<std::size_t> d(0, es.size() - 1);
    std::size_t i = d(g), j = d(g);
    if (i == j) continue;
    const Edge x = es[i], y = es[j];
    std::vector<int> al = m.pairing();
    switch_pairing(al, x, y, SwitchVariant::A);
    EXPECT_NE(al, m.pairing());
    switch_pairing(al, {x.a, y.a}, {x.b, y.b}, SwitchVariant::A);
    EXPECT_EQ(al, m.pairing());
    switch_pairing(al, x, y, SwitchVariant::B);
    switch_pairing(al, {x.a, y.b}, {y.a, x.b}, SwitchVariant::B);
    EXPECT_EQ(al, m.pairing());
  }
}

TEST(CombMap, ComponentsKeepLabelOrder) {
  // two self-loop vertices with interleaved labels
  auto m = CombMap::from_pairing({{0, 2}, {1, 3}}, {2, 3, 0, 1});
  ASSERT_EQ(m.gamma(), 2);
  auto cs = m.components();
  ASSERT_EQ(cs.size(), 2u);
  for (const auto& c : cs) {
    EXPECT_EQ(c.vertices(), 1);
    EXPECT_EQ(c.pairing(), (std::vector<int>{1, 0}));
  }
}

TEST(Canonical, MelonSwapSameClass) {
  EXPECT_EQ(canonical_code(melon(2, Permutation::identity(2))), canonical_code(melon(2, Permutation({1, 0}))));
}

TEST(Canonical, BouquetsDistinguished) {
  auto a = bouquet(4, Permutation::identity(4));
  auto b = CombMap::from_degrees({4}, {2, 3, 0, 1});
  EXPECT_NE(canonical_code(a), canonical_code(b));
}

TEST(Canonical, StableUnderRootedRelabeling) {
  for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {2, 3}, {3, 4}}) {
    const auto group = rooted_relabelings(p, n);
    EXPECT_EQ(static_cast<long long>(group.size()), rooted_group_size(p, n));
    std::vector<int> degrees(static_cast<std::size_t>(n), p);
    for (const auto& m : enumerate_bn(p, n)) {
      auto code = canonical_code(m);
      for (const auto& g : group)
        EXPECT_EQ(canonical_code(CombMap::from_degrees(degrees, oracle::relabel(m.pairing(), g))), code);
    }
  }
}

TEST(Canonical, AgreesWithLexMinOracle) {
  // same partition of all labeled pairings into classes
  for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {2, 4}, {1, 2}, {4, 3}}) {
    const auto group = rooted_relabelings(p, n);
    std::vector<int> degrees(static_cast<std::size_t>(n), p);
    std::map<std::vector<int>, CanonicalCode> by_oracle;
    std::map<CanonicalCode, std::vector<int>> by_code;
    oracle::for_each_involution(p * n, [&](const std::vector<int>& a) {
      auto m = CombMap::from_degrees(degrees, a);
      if (!m.connected()) return;
      auto o = oracle::lexmin_pairing(a, group);
      auto c = canonical_code(m);
      auto [it, fresh] = by_oracle.emplace(o, c);
      EXPECT_EQ(it->second, c);
      auto [jt, fresh2] = by_code.emplace(c, o);
      EXPECT_EQ(jt->second, o);
    });
  }
}

TEST(Canonical, TextRoundTrip) {
  for (const auto& m : enumerate_bn(3, 4)) {
    auto c = canonical_code(m);
    EXPECT_EQ(CanonicalCode::parse(c.str()), c);
    EXPECT_EQ(canonical_code(map_from_code(c)), c);
  }
  auto two = CombMap::from_pairing({{0, 2}, {1, 3}}, {2, 3, 0, 1});
  auto c = canonical_code(two);
  EXPECT_EQ(c.str(), "2:1,0/2:1,0");
  EXPECT_EQ(canonical_code(map_from_code(c)), c);
  EXPECT_THROW(CanonicalCode::parse("3,3"), MapError);
  EXPECT_THROW(map_from_code(CanonicalCode::parse("2:0,1")), MapError);
}

TEST(Canonical, CanonicalFormIsBlockRepresentative) {
  for (const auto& m : enumerate_bn(4, 2)) {
    auto f = canonical_form(m);
    EXPECT_TRUE(f.has_block_rotation());
    EXPECT_EQ(canonical_code(f), canonical_code(m));
  }
  EXPECT_THROW(canonical_form(CombMap::from_pairing({{0, 2}, {1, 3}}, {2, 3, 0, 1})), MapError);
}
