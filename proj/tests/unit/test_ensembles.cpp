#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include <nlohmann/json.hpp>

#include "tfp/contraction.hpp"
#include "tfp/ensembles.hpp"
#include "tfp/enumerate.hpp"
#include "tfp/errors.hpp"

using namespace tfp;

TEST(Wigner, ClassVariance) {
  std::array<int, 3> distinct{0, 1, 2}, pair{0, 0, 1}, diag{1, 1, 1};
  EXPECT_DOUBLE_EQ(wigner_class_variance(distinct), 0.5);
  EXPECT_DOUBLE_EQ(wigner_class_variance(pair), 1.0);
  EXPECT_DOUBLE_EQ(wigner_class_variance(diag), 3.0);
  std::array<int, 2> off{0, 1}, on{1, 1};
  EXPECT_DOUBLE_EQ(wigner_class_variance(off), 1.0);
  EXPECT_DOUBLE_EQ(wigner_class_variance(on), 2.0);
}

TEST(Wigner, ExactlySymmetric) {
  for (auto law : {EntryLaw::gaussian, EntryLaw::rademacher}) {
    EnsembleConfig c;
    c.p = 4;
    c.N = 5;
    c.law = law;
    auto rng = trial_rng(9, 0);
    auto T = sample_wigner(c, rng);
    EXPECT_TRUE(T.symmetric());
    EXPECT_TRUE(T.is_symmetric(0.0));
  }
}

TEST(Wigner, EntryVariancePerClass) {
  // N=3, p=3: scale N^-1, so variances (p/P) / 9
  for (auto law : {EntryLaw::gaussian, EntryLaw::rademacher}) {
    EnsembleConfig c;
    c.p = 3;
    c.N = 3;
    c.law = law;
    const long draws = 20000;
    const std::array<std::array<int, 3>, 3> idx{{{0, 1, 2}, {0, 0, 1}, {2, 2, 2}}};
    std::array<double, 3> sum{}, sum2{};
    for (long d = 0; d < draws; ++d) {
      auto rng = trial_rng(77, static_cast<std::uint64_t>(d));
      auto T = sample_wigner(c, rng);
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const double x = T.at(idx[k]);
        sum[k] += x;
        sum2[k] += x * x;
      }
    }
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const double want = wigner_class_variance(idx[k]) / 9.0;
      const double mean = sum[k] / draws, var = sum2[k] / draws;
      // fourth moment at most 3 var^2 for both laws
      const double se = want * std::sqrt(2.0 / draws);
      EXPECT_NEAR(var, want, 5 * se) << k;
      EXPECT_NEAR(mean, 0.0, 5 * std::sqrt(want / draws)) << k;
    }
  }
}

TEST(Wishart, SymmetricAndRank) {
  EnsembleConfig c;
  c.family = Family::wishart;
  c.p = 4;
  c.N = 4;
  c.t = 1;
  EXPECT_EQ(c.rank(), 16);
  auto rng = trial_rng(10, 0);
  auto T = sample_wishart(c, rng);
  EXPECT_TRUE(T.is_symmetric(1e-12));
  c.scaling = WishartScaling::moment_matched;
  EXPECT_EQ(c.rank(), 2);
  c.p = 3;
  c.scaling = WishartScaling::literal;
  auto rng2 = trial_rng(10, 1);
  auto U = sample_wishart(c, rng2);
  EXPECT_EQ(U.order(), 3);
  EXPECT_TRUE(U.is_symmetric(1e-12));
}

TEST(Ensembles, ValidateErrors) {
  EnsembleConfig c;
  c.p = 0;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.family = Family::wishart;
  c.p = 3;
  c.scaling = WishartScaling::moment_matched;
  EXPECT_THROW(c.validate(), DomainError);
  c.scaling = WishartScaling::literal;
  c.p1 = 3;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.superpose = 0;
  EXPECT_THROW(c.validate(), DomainError);
  EXPECT_THROW(parse_family("gue"), std::exception);
  EXPECT_EQ(parse_entry_law(law_name(EntryLaw::rademacher)), EntryLaw::rademacher);
  EXPECT_EQ(parse_scaling(scaling_name(WishartScaling::moment_matched)), WishartScaling::moment_matched);
}

TEST(Ensembles, CltSingleTermIsBaseDraw) {
  EnsembleConfig c;
  c.p = 3;
  c.N = 4;
  auto r1 = trial_rng(5, 3), r2 = trial_rng(5, 3);
  Sampler base = [&c](std::mt19937_64& g) { return sample_wigner(c, g); };
  EXPECT_EQ(clt_superposition(1, base, r1).data(), sample_wigner(c, r2).data());
  auto r3 = trial_rng(5, 4), r4 = trial_rng(5, 4);
  auto four = clt_superposition(4, base, r3);
  DenseTensor sum = base(r4);
  for (int i = 1; i < 4; ++i) sum += base(r4);
  for (std::size_t i = 0; i < sum.size(); ++i) EXPECT_NEAR(four[i], sum[i] / 2.0, 1e-14);
}

TEST(Ensembles, ReproducibleAcrossThreadCounts) {
  EnsembleConfig c;
  c.p = 3;
  c.N = 6;
  c.seed = 123;
  auto m = melon(3, Permutation::identity(3));
  c.threads = 1;
  auto a = estimate_map(m, c, 40);
  c.threads = 4;
  auto b = estimate_map(m, c, 40);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.variance, b.variance);
  EXPECT_EQ(a.trials, 40);
  EXPECT_NEAR(a.stderr_, std::sqrt(a.variance / 40), 1e-15);
}

TEST(Ensembles, MomentsGroupedByMultigraph) {
  // grouping is an evaluation shortcut: totals over groups equal per-class sums
  auto classes = enumerate_bn(3, 4);
  auto groups = multigraph_groups(classes);
  int total = 0;
  for (const auto& [rep, mult] : groups) total += mult;
  EXPECT_EQ(static_cast<std::size_t>(total), classes.size());
  EXPECT_LT(groups.size(), classes.size());

  EnsembleConfig c;
  c.p = 3;
  c.N = 4;
  auto rng = trial_rng(1, 0);
  auto T = sample_wigner(c, rng);
  double by_class = 0, by_group = 0;
  for (const auto& m : classes) by_class += eval_trace_invariant(m, T);
  for (const auto& [rep, mult] : groups) by_group += mult * eval_trace_invariant(rep, T);
  EXPECT_NEAR(by_group, by_class, 1e-10 * (1 + std::abs(by_class)));
}

TEST(Ensembles, ReportJsonAndLadder) {
  EnsembleConfig c;
  c.p = 3;
  c.N = 4;
  c.seed = 8;
  auto reps = estimate_moments(c, 2, 10, {});
  ASSERT_EQ(reps.size(), 2u);
  EXPECT_EQ(reps[0].statistic, "m_n");
  EXPECT_EQ(reps[1].n, 2);
  auto j = nlohmann::json::parse(reps[1].to_json());
  EXPECT_EQ(j["statistic"], "m_n");
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["trials"], 10);
  EXPECT_EQ(j["seed"], 8);
  EXPECT_TRUE(j.contains("config"));
  auto csv = ladder_csv(reps);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "statistic,N,mean,stderr,trials");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(Ensembles, SummarizePairwise) {
  MonteCarloReport r;
  summarize({1.0, 2.0, 3.0, 4.0}, r);
  EXPECT_DOUBLE_EQ(r.mean, 2.5);
  EXPECT_DOUBLE_EQ(r.variance, 5.0 / 3.0);
  EXPECT_EQ(r.trials, 4);
}
