#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tfp/errors.hpp"
#include "tfp/fuss.hpp"
#include "tfp/laws.hpp"

using namespace tfp;

namespace {

Series<Rational> ser(std::vector<long> v) {
  std::vector<Rational> c;
  for (long x : v) c.emplace_back(x);
  return Series<Rational>(std::move(c));
}

QPoly tpoly(std::vector<long> v) {
  std::vector<Rational> c;
  for (long x : v) c.emplace_back(x);
  return QPoly(std::move(c));
}

CumulantSeries<Rational> random_cumulants(int p, int K, std::mt19937_64& g) {
  Series<Rational> s = Series<Rational>::one(K);
  for (int n = 1; n <= K; ++n) s[n] = (p % 2 && n % 2) ? Rational(0) : oracle::random_rational(g);
  return {p, s};
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("1e3"), Rational(1000));
  EXPECT_EQ(to_string(Rational(3)), "3/1");
  EXPECT_EQ(to_string(parse_rational("-2/4")), "-1/2");
  EXPECT_THROW(parse_rational("x"), std::exception);
  EXPECT_THROW(parse_rational("1/0"), std::exception);
}

TEST(QPoly, Arithmetic) {
  QPoly t = QPoly::var();
  QPoly a = t + QPoly(2) * t * t;
  EXPECT_EQ(a.degree(), 2);
  EXPECT_EQ(a.coeff(1), 1);
  EXPECT_EQ(a.eval(Rational(1)), 3);
  EXPECT_EQ((a - a).degree(), -1);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(a.str(), "t + 2*t^2");
  EXPECT_EQ((a / QPoly(Rational(2))).coeff(2), 1);
  EXPECT_THROW(a / t, std::exception);
  EXPECT_NEAR(static_cast<double>(a.eval(0.5L)), 1.0, 1e-15);
}

TEST(Fuss, CatalanAndNarayana) {
  EXPECT_EQ(fuss_catalan(3, 2), 3);
  EXPECT_EQ(fuss_catalan(2, 5), 42);
  EXPECT_EQ(fuss_catalan(4, 2), 4);
  for (long q = 1; q <= 4; ++q)
    for (long n = 1; n <= 4; ++n) EXPECT_EQ(nc_multiple_total(q, n), fuss_catalan(q + 1, n)) << q << "," << n;
  EXPECT_EQ(fuss_catalan_rational(Rational(3), 2), Rational(3));
}

TEST(Fuss, HalfIntegerMatchesEnumeration) {
  for (long n = 1; n <= 8; ++n) {
    auto counts = count_nc_multiple_by_blocks(Rational(3, 2), n);
    for (long b = 1; b <= n; ++b) {
      long long got = b < static_cast<long>(counts.size()) ? counts[static_cast<std::size_t>(b)] : 0;
      EXPECT_EQ(Integer(static_cast<long>(got)), fuss_narayana(Rational(3, 2), n, b)) << n << "," << b;
    }
  }
}

TEST(NonCrossing, EnumerationMatchesSetPartitionOracle) {
  for (long q = 1; q <= 3; ++q)
    for (long n = 1; q * n <= 9; ++n) {
      auto brute = oracle::nc_counts(static_cast<int>(q * n), static_cast<int>(q));
      auto got = count_nc_multiple_by_blocks(Rational(q), n);
      for (long b = 1; b <= n; ++b) {
        long long g = b < static_cast<long>(got.size()) ? got[static_cast<std::size_t>(b)] : 0;
        EXPECT_EQ(g, brute[static_cast<std::size_t>(b)]) << q << "," << n << "," << b;
      }
    }
  EXPECT_EQ(enumerate_nc_multiple(Rational(2), 3).size(), 12u);
  for (const auto& part : enumerate_nc_multiple(Rational(2), 3))
    for (const auto& blk : part) EXPECT_EQ(blk.size() % 2, 0u);
}

TEST(Recursion, ClassicalCase) {
  // p=2: m_2 = kappa_2 + kappa_1^2
  CumulantSeries<Rational> c{2, ser({1, 3, 5, 0})};
  auto m = moments_from_cumulants(c);
  EXPECT_EQ(m[1], 3);
  EXPECT_EQ(m[2], 5 + 9);
}

TEST(Recursion, FreePoissonOrderFour) {
  auto m = moments_from_cumulants(free_poisson_cumulants<QPoly>(4, QPoly::var(), 3));
  EXPECT_EQ(m[1], QPoly::var());
  EXPECT_EQ(m[2], tpoly({0, 1, 2}));
  EXPECT_EQ(m[3], tpoly({0, 1, 6, 5}));
}

TEST(Recursion, OrderThreeSemicircular) {
  auto m = moments_from_cumulants(semicircular_cumulants<Rational>(3, 6));
  EXPECT_EQ(m[4], 3);
  EXPECT_EQ(m[6], 12);
  EXPECT_EQ(m[1], 0);
}

TEST(Recursion, InverseOnKnownLaws) {
  auto c = cumulants_from_moments(semicircular_moments<Rational>(5, 10));
  for (int n = 0; n <= 10; ++n) EXPECT_EQ(c[n], (n == 0 || n == 2) ? 1 : 0);
  auto cp = cumulants_from_moments(free_poisson_moments<QPoly>(4, QPoly::var(), 8));
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(cp[n], QPoly::var());
}

TEST(Recursion, ParityErrors) {
  CumulantSeries<Rational> c{3, ser({1, 1, 1})};
  EXPECT_THROW(moments_from_cumulants(c), ParityError);
  MomentSeries<Rational> m{3, ser({1, 1, 1})};
  EXPECT_THROW(cumulants_from_moments(m), ParityError);
  MomentSeries<Rational> bad{4, ser({2, 1})};
  EXPECT_THROW(cumulants_from_moments(bad), DomainError);
}

TEST(Property, RoundTripRandomSequences) {
  std::mt19937_64 g(11);
  for (int p : {1, 2, 3, 4, 5, 6})
    for (int trial = 0; trial < 20; ++trial) {
      auto c = random_cumulants(p, 12, g);
      auto m = moments_from_cumulants(c);
      EXPECT_EQ(cumulants_from_moments(m), c);
      EXPECT_TRUE(verify_functional(m, c)) << "p=" << p;
    }
}

TEST(Property, FreeConvolutionAddsCumulants) {
  std::mt19937_64 g(12);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_cumulants(4, 10, g), b = random_cumulants(4, 10, g);
    auto ma = moments_from_cumulants(a), mb = moments_from_cumulants(b);
    auto ms = free_convolve(ma, mb);
    auto cs = cumulants_from_moments(ms);
    for (int n = 1; n <= 10; ++n) EXPECT_EQ(cs[n], a[n] + b[n]);
    EXPECT_EQ(free_convolve(ma, mb), free_convolve(mb, ma));
  }
}

TEST(Property, DilationScalesCumulants) {
  // kappa_n(c mu) = c^n kappa_n(mu) at even order
  std::mt19937_64 g(13);
  for (int trial = 0; trial < 10; ++trial) {
    auto c = random_cumulants(4, 8, g);
    auto m = moments_from_cumulants(c);
    const Rational f(3, 2);
    auto cd = cumulants_from_moments(dilate(m, f));
    for (int n = 1; n <= 8; ++n) EXPECT_EQ(cd[n], c[n] * pow(f, n));
  }
}

TEST(Functional, DetectsPerturbation) {
  auto m = semicircular_moments<Rational>(3, 10);
  auto c = semicircular_cumulants<Rational>(3, 10);
  EXPECT_TRUE(verify_functional(m, c));
  auto fp = free_poisson_moments<Rational>(4, Rational(1, 3), 10);
  EXPECT_TRUE(verify_functional(fp, free_poisson_cumulants<Rational>(4, Rational(1, 3), 10)));
  m.s[6] += 1;
  EXPECT_FALSE(verify_functional(m, c));
}

TEST(Laws, ClosedForms) {
  EXPECT_EQ(semicircular_moments<Rational>(2, 6).s, ser({1, 0, 1, 0, 2, 0, 5}));
  auto d = delta_moments<QPoly>(4, QPoly::var(), 3);
  EXPECT_EQ(d[1], tpoly({0, 1}));
  EXPECT_EQ(d[2], tpoly({0, 0, 2}));
  EXPECT_EQ(d[3], tpoly({0, 0, 0, 5}));
  auto fp2 = free_poisson_moments<QPoly>(2, QPoly::var(), 2);
  EXPECT_EQ(fp2[2], tpoly({0, 1, 1}));
  EXPECT_THROW(delta_moments<Rational>(3, Rational(1), 3), DomainError);
}

TEST(Laws, MarchenkoPasturClassical) {
  // order 2, tau = 2: Narayana moments of ratio 2 scaled back
  auto m = marchenko_pastur_moments<Rational>(2, Rational(2), 3);
  auto fp = free_poisson_moments<Rational>(2, Rational(1, 2), 3);
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(m[n], fp[n] * pow(Rational(2), n));
  auto f = marchenko_pastur_moments<Rational>(2, Rational(2), 3, Rational(1, 2));
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(f[n], fp[n] * pow(Rational(1, 2), n));
}

TEST(Laws, HalfIntegerFreePoissonFromRecursion) {
  // order 3: moments from kappa_{2j} = t through the recursion
  auto m = moments_from_cumulants(free_poisson_cumulants<QPoly>(3, QPoly::var(), 8));
  auto closed = free_poisson_moments<QPoly>(3, QPoly::var(), 8);
  for (int n = 0; n <= 8; ++n) EXPECT_EQ(m[n], closed[n]) << n;
}

TEST(Transforms, RAndQ) {
  auto r = r_transform(semicircular_cumulants<Rational>(4, 6));
  EXPECT_EQ(r, ser({0, 1, 0, 0, 0, 0}));
  auto rp = r_transform(free_poisson_cumulants<Rational>(4, Rational(2), 6));
  for (int k = 0; k <= rp.K(); ++k) EXPECT_EQ(rp[k], 2);
  auto c = free_poisson_cumulants<Rational>(2, Rational(2), 6);
  EXPECT_EQ(q_transform(c), r_transform(c));
  EXPECT_THROW(q_transform(semicircular_cumulants<Rational>(3, 4)), DomainError);
}

TEST(Transforms, KOfG) {
  EXPECT_TRUE(cauchy_pair_check(semicircular_moments<Rational>(4, 8)));
  EXPECT_TRUE(cauchy_pair_check(free_poisson_moments<Rational>(4, Rational(1), 8)));
  EXPECT_TRUE(cauchy_pair_check(semicircular_moments<Rational>(2, 8)));  // classical
  EXPECT_TRUE(cauchy_pair_check_gk(free_poisson_moments<Rational>(6, Rational(1, 2), 8),
                                   free_poisson_cumulants<Rational>(6, Rational(1, 2), 8)));
  auto bad = semicircular_moments<Rational>(4, 8);
  bad.s[2] += 1;
  EXPECT_FALSE(cauchy_pair_check(bad, semicircular_cumulants<Rational>(4, 8)));
}

TEST(Laurent, ComposeTruncation) {
  LaurentSeries<Rational> L{Rational(1), ser({0, 0, 0})};
  auto g = ser({0, 1, 0, 0, 0});  // g(u) = u
  auto out = L.compose(g);
  EXPECT_EQ(out.pole, 1);
  EXPECT_EQ(out.regular.K(), 2);
  EXPECT_THROW(L.compose(ser({1, 1, 0})), DomainError);
}

TEST(Clt, ExactRescaling) {
  Series<Rational> s = Series<Rational>::one(6);
  for (int n = 2; n <= 6; ++n) s[n] = 1;
  CumulantSeries<Rational> k{4, s};
  auto r = clt_rescale(k, Rational(100));
  EXPECT_EQ(r[2], 1);
  EXPECT_EQ(r[3], Rational(1, 10));
  EXPECT_EQ(r[4], Rational(1, 100));
  EXPECT_THROW(clt_rescale(k, Rational(10)), DomainError);
  Series<Rational> bad = s;
  bad[1] = 1;
  EXPECT_THROW(clt_rescale_symbolic(CumulantSeries<Rational>{4, bad}), DomainError);
  // m_n(s_k) -> F_4(n/2) with error O(1/k)
  auto m = moments_from_cumulants(clt_rescale_symbolic(k));
  for (int n = 2; n <= 6; n += 2) EXPECT_EQ(m[n].coeff(0), Rational(fuss_catalan(4, n / 2)));
  EXPECT_EQ(m[4].coeff(1), 0);  // no eps^1 term: error is O(eps^2) = O(1/k)
}

TEST(PoissonLimit, SecondCumulantIsOne) {
  auto c = poisson_limit_cumulants(4, 8);
  EXPECT_EQ(c[1], QPoly());
  EXPECT_EQ(c[2], QPoly(1));
  for (int n = 3; n <= 8; ++n) EXPECT_EQ(c[n], QPoly::monomial(Rational(1), n - 2));
  auto rep = poisson_limit_check(4, 8, {Rational(100), Rational(10000)});
  EXPECT_TRUE(rep.cumulants_exact);
  EXPECT_LT(rep.rows[1].max_error, rep.rows[0].max_error);
}

TEST(ExpBound, Checks) {
  auto m = semicircular_moments<Rational>(2, 12);
  auto c = semicircular_cumulants<Rational>(2, 12);
  auto r = exp_bound_check(m, c, 1.0);
  EXPECT_TRUE(r.kappa_hypothesis);
  EXPECT_TRUE(r.moment_conclusion);
  EXPECT_TRUE(r.ok());
  const int p = 4;
  const double M = std::sqrt(std::pow(p, p) / std::pow(p - 1, p - 1));
  auto m4 = semicircular_moments<Rational>(p, 12);
  for (int n = 1; n <= 12; ++n) EXPECT_LE(m4[n].get_d(), std::pow(M, n) * (1 + 1e-12));
  auto zero_tail = CumulantSeries<Rational>{2, Series<Rational>::one(12)};
  EXPECT_TRUE(exp_bound_check(moments_from_cumulants(zero_tail), zero_tail, 1.0).ok());
}

TEST(SeriesIo, JsonRoundTrip) {
  auto s = semicircular_moments<Rational>(3, 6).s;
  s[1] = Rational(-7, 3);
  EXPECT_EQ(series_from_json(series_to_json(s)), s);
  EXPECT_EQ(series_from_json("{\"moments\": [\"1\", 2, \"3/4\"]}"), (Series<Rational>({1, 2, Rational(3, 4)})));
  EXPECT_THROW(series_from_json("[1.5]"), IoError);
  EXPECT_THROW(series_from_json("nope"), IoError);
}

TEST(LawTable, CsvShape) {
  LawSpec s;
  s.family = LawFamily::semicircular;
  s.p = 2;
  auto csv = law_table_csv({s}, 4);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "law,p,t,n,m_n,kappa_n");
  EXPECT_NE(csv.find("semicircular,2,,4,2/1,0/1"), std::string::npos) << csv;
}
