#include <gtest/gtest.h>

#include <filesystem>

#include <unistd.h>

#include "tfp/distribution.hpp"
#include "tfp/errors.hpp"
#include "tfp/fuss.hpp"
#include "tfp/laws.hpp"

using namespace tfp;

namespace {

QPoly tpoly(std::vector<long> v) {
  std::vector<Rational> c;
  for (long x : v) c.emplace_back(x);
  return QPoly(std::move(c));
}

QPoly fact_inv(long k) { return QPoly(Rational(1) / Rational(factorial(k))); }

}  // namespace

TEST(MapDistribution, CumulantRuleValues) {
  for (int p : {2, 4}) EXPECT_EQ(cumulant_of_map(semicircular_map(p), melon(p, Permutation::identity(p))), fact_inv(p - 1));
  // odd order is a moment rule; the melon value is read off eval
  EXPECT_EQ(eval(semicircular_map(3), melon(3, Permutation::identity(3))), fact_inv(2));
  auto fp = free_poisson_map(4);
  for (int n = 1; n <= 3; ++n)
    EXPECT_EQ(cumulant_of_map(fp, multicycle(4, n)), QPoly::var() * QPoly(Rational(1, 1L << n))) << n;
  EXPECT_EQ(cumulant_of_map(identity_map(4), bouquet(4, Permutation::identity(4))), QPoly::var() * QPoly(Rational(1, 3)));
  EXPECT_EQ(cumulant_of_map(identity_map(2), CombMap::build({{0, 1}}, {{0, 1}})), QPoly::var());
  EXPECT_TRUE(cumulant_of_map(delta0_map(4), multicycle(4, 1)).is_zero());
}

TEST(MapDistribution, DisconnectedEvalIsProduct) {
  auto d = free_poisson_map(4);
  // a multicycle and a bouquet side by side
  auto a = multicycle(4, 2);
  auto b = bouquet(4, Permutation::identity(4));
  std::vector<std::vector<int>> cyc = a.cycles();
  std::vector<int> pair = a.pairing();
  const int off = static_cast<int>(pair.size());
  for (auto c : b.cycles()) {
    for (int& h : c) h += off;
    cyc.push_back(c);
  }
  for (int x : b.pairing()) pair.push_back(x + off);
  auto both = CombMap::from_pairing(cyc, pair);
  ASSERT_EQ(both.gamma(), 2);
  EXPECT_EQ(eval(d, both), eval(d, a) * eval(d, b));
  auto s = semicircular_map(4);
  EXPECT_EQ(eval(s, both), eval(s, a) * eval(s, b));
}

TEST(MapDistribution, MomentRuleAgreesWithCumulantRule) {
  auto d = free_poisson_map(4);
  auto dm = as_moment_rule(d);
  for (const auto& m : enumerate_bn(4, 2)) {
    EXPECT_EQ(eval(dm, m), eval(d, m));
    EXPECT_EQ(cumulant_of_map(dm, m), cumulant_of_map(d, m)) << canonical_code(m).str();
  }
  EXPECT_THROW(cumulant_of_map(as_moment_rule(semicircular_map(3)), melon(3, Permutation::identity(3))),
               UnsupportedError);
}

TEST(MomentN, SemicircularOrderTwo) {
  auto d = semicircular_map(2);
  EXPECT_EQ(moment_n(d, build_atlas(2, 2)), QPoly(1));
  EXPECT_EQ(moment_n(d, build_atlas(2, 4)), QPoly(2));
  EXPECT_EQ(moment_n(d, build_atlas(2, 6)), QPoly(5));
  EXPECT_TRUE(moment_n(d, build_atlas(2, 3)).is_zero());
}

TEST(MomentN, MatchesSeriesForOrderThreeAndFour) {
  for (int p : {3, 4}) {
    auto series = semicircular_moments<Rational>(p, 2);
    EXPECT_EQ(moment_n(semicircular_map(p), build_atlas(p, 2)), QPoly(series[2])) << p;
  }
}

TEST(MomentN, FreePoisson) {
  auto d = free_poisson_map(4);
  EXPECT_EQ(moment_n(d, build_atlas(4, 1)), QPoly::var());
  EXPECT_EQ(moment_n(d, build_atlas(4, 2)), tpoly({0, 1, 2}));
  EXPECT_EQ(cumulant_n(d, build_atlas(4, 1)), QPoly::var());
  EXPECT_EQ(cumulant_n(d, build_atlas(4, 2)), QPoly::var());
}

TEST(FreeSum, CumulantsAdd) {
  auto a = semicircular_map(4), b = free_poisson_map(4);
  auto s = free_sum(a, b);
  for (int n = 1; n <= 2; ++n) {
    auto at = build_atlas(4, n);
    EXPECT_EQ(cumulant_n(s, at), cumulant_n(a, at) + cumulant_n(b, at));
  }
  auto z = free_sum(a, delta0_map(4));
  for (const auto& m : enumerate_bn(4, 2)) EXPECT_EQ(eval(z, m), eval(a, m));
}

TEST(Melonic, CountAtOrderTwoFour) {
  EXPECT_EQ(count_melonic_classes(build_atlas(2, 4)), 1u);
  EXPECT_EQ(count_melonic_classes(build_atlas(3, 2)), 2u);  // S_3 modulo rotation
}

TEST(MapMomentTable, RowsAndCsv) {
  auto dir = std::filesystem::temp_directory_path() / ("tfp_test_table_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  auto rows = map_moment_table(free_poisson_map(4), 2, dir);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].moment, tpoly({0, 1, 2}));
  ASSERT_TRUE(rows[1].cumulant.has_value());
  auto csv = map_moment_csv(rows, Rational(2));
  EXPECT_EQ(csv, "n,m_n,kappa_n\n1,2/1,2/1\n2,10/1,2/1\n");
  auto odd = map_moment_table(semicircular_map(3), 2, dir);
  EXPECT_FALSE(odd[1].cumulant.has_value());
  EXPECT_NE(map_moment_csv(odd, Rational(1)).find("2,1/1,\n"), std::string::npos) << map_moment_csv(odd, Rational(1));
  std::filesystem::remove_all(dir);
}
