#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <sstream>

#include "tfp/contraction.hpp"
#include "tfp/dense_tensor.hpp"
#include "tfp/enumerate.hpp"
#include "tfp/errors.hpp"

using namespace tfp;

namespace {

DenseTensor random_tensor(int p, int N, std::mt19937_64& g) {
  std::normal_distribution<double> d;
  DenseTensor T(p, N);
  for (auto& x : T.data()) x = d(g);
  return T;
}

DenseTensor identity_matrix(int N) {
  DenseTensor I(2, N);
  for (int i = 0; i < N; ++i) I[static_cast<std::size_t>(i * N + i)] = 1;
  return I;
}

std::vector<const DenseTensor*> same(const CombMap& m, const DenseTensor& T) {
  return std::vector<const DenseTensor*>(static_cast<std::size_t>(m.vertices()), &T);
}

std::vector<double> random_orthogonal(int N, std::mt19937_64& g) {
  std::normal_distribution<double> d;
  Eigen::MatrixXd A(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) A(i, j) = d(g);
  Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(A).householderQ();
  std::vector<double> out(static_cast<std::size_t>(N * N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) out[static_cast<std::size_t>(i * N + j)] = Q(i, j);
  return out;
}

const CombMap self_loop = CombMap::build({{0, 1}}, {{0, 1}});

}  // namespace

TEST(DenseTensor, PermuteLegs) {
  std::mt19937_64 g(1);
  auto T = random_tensor(3, 3, g);
  EXPECT_EQ(permute_legs(T, Permutation::identity(3)).data(), T.data());
  auto M = random_tensor(2, 4, g);
  auto Mt = permute_legs(M, Permutation({1, 0}));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::array<int, 2> ij{i, j}, ji{j, i};
      EXPECT_EQ(Mt.at(ij), M.at(ji));
    }
  auto S = symmetrize(T);
  EXPECT_TRUE(S.is_symmetric(1e-14));
  for (const auto& s : all_permutations(3)) {
    auto P = permute_legs(S, s);
    for (std::size_t i = 0; i < S.size(); ++i) EXPECT_NEAR(P[i], S[i], 1e-14);
  }
  EXPECT_THROW(permute_legs(T, Permutation::identity(2)), DomainError);
}

TEST(DenseTensor, SymmetrizePairOfVectors) {
  DenseTensor a(1, 2, {1, 0}), b(1, 2, {0, 1});
  auto s = symmetrize_pair(a, b);
  EXPECT_EQ(s.order(), 2);
  EXPECT_NEAR(s[1], 0.5, 1e-15);
  EXPECT_NEAR(s[2], 0.5, 1e-15);
  EXPECT_NEAR(s[0], 0.0, 1e-15);
  EXPECT_TRUE(s.is_symmetric());
}

TEST(TraceInvariant, SmallExamples) {
  std::mt19937_64 g(2);
  auto M = random_tensor(2, 5, g);
  double tr = 0;
  for (int i = 0; i < 5; ++i) tr += M[static_cast<std::size_t>(i * 5 + i)];
  EXPECT_NEAR(eval_trace_invariant(self_loop, M), tr / 5, 1e-13);
  EXPECT_NEAR(eval_trace_invariant(melon(2, Permutation::identity(2)), identity_matrix(7)), 1.0, 1e-14);

  // e_0 (x) e_0 (x) e_0 (x) e_0 on the identity bouquet: one nonzero term over N
  DenseTensor E(4, 3);
  E[0] = 1;
  EXPECT_NEAR(eval_trace_invariant(bouquet(4, Permutation::identity(4)), E), 1.0 / 3, 1e-15);
}

TEST(TraceInvariant, DisconnectedIsProductOfNormalizedParts) {
  std::mt19937_64 g(3);
  auto M = random_tensor(2, 4, g);
  auto two = CombMap::from_pairing({{0, 1}, {2, 3}}, {1, 0, 3, 2});
  ASSERT_EQ(two.gamma(), 2);
  const double one = eval_trace_invariant(self_loop, M);
  EXPECT_NEAR(eval_trace_invariant(two, M), one * one, 1e-13);
}

TEST(Plan, MatchesNaive) {
  std::mt19937_64 g(4);
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 4}, {3, 2}, {4, 2}, {3, 4}, {4, 3}}) {
    for (int N : {2, 3}) {
      auto T = symmetrize(random_tensor(p, N, g));
      auto U = random_tensor(p, N, g);  // non-symmetric also fine
      for (const auto& m : enumerate_bn(p, n)) {
        const double a = eval_trace_invariant(m, T), b = eval_naive(m, same(m, T));
        EXPECT_NEAR(a, b, 1e-10 * (1 + std::abs(b))) << canonical_code(m).str() << " N=" << N;
        const double c = eval_trace_invariant(m, same(m, U)), d = eval_naive(m, same(m, U));
        EXPECT_NEAR(c, d, 1e-10 * (1 + std::abs(d))) << canonical_code(m).str() << " N=" << N;
      }
    }
  }
}

TEST(Plan, MixedDegreesAndDistinctTensors) {
  std::mt19937_64 g(5);
  // a degree-3 vertex, a degree-1 vertex and a degree-2 vertex
  auto m = CombMap::from_pairing({{0, 1, 2}, {3}, {4, 5}}, {4, 2, 1, 5, 0, 3});
  ASSERT_EQ(m.gamma(), 1);
  for (int N : {2, 3, 4}) {
    auto A = random_tensor(3, N, g), B = random_tensor(1, N, g), C = random_tensor(2, N, g);
    std::vector<const DenseTensor*> ts{&A, &B, &C};
    EXPECT_NEAR(eval_trace_invariant(m, ts), eval_naive(m, ts), 1e-12);
    // multilinear in each vertex tensor
    auto A2 = A;
    A2 *= 2.5;
    std::vector<const DenseTensor*> ts2{&A2, &B, &C};
    EXPECT_NEAR(eval_trace_invariant(m, ts2), 2.5 * eval_trace_invariant(m, ts), 1e-12);
  }
}

TEST(Plan, MulticycleStaysSmall) {
  // chain merges never exceed N^4 entries; the naive loop visits N^(2n)
  const int N = 6;
  for (int n = 2; n <= 5; ++n) {
    auto plan = plan_contraction(multicycle(4, n), N);
    EXPECT_LE(plan.peak_entries, static_cast<std::size_t>(N * N * N * N)) << n;
    if (n >= 4) {
      EXPECT_LT(plan.flops, std::pow(N, 2 * n) / 10) << n;
    }
  }
  auto plan = plan_contraction(odd_multicycle(3, 2), 8);
  EXPECT_EQ(plan.gamma, 1);
  EXPECT_EQ(plan.scalars.size(), 1u);
  ExecutionTrace tr;
  DenseTensor T(3, 8);
  T[0] = 1;
  execute_plan(plan, same(odd_multicycle(3, 2), T), &tr);
  ASSERT_EQ(tr.step_entries.size(), plan.steps.size());
  for (std::size_t i = 0; i < tr.step_entries.size(); ++i) EXPECT_EQ(tr.step_entries[i], plan.steps[i].result_entries);
}

TEST(Plan, CacheReturnsSamePlan) {
  PlanCache cache;
  auto m = melon(3, Permutation::identity(3));
  const auto& a = cache.get(m, 4);
  const auto& b = cache.get(m, 4);
  EXPECT_EQ(&a, &b);
  EXPECT_NE(&cache.get(m, 5), &a);
}

TEST(Orthogonal, InvariantsUnchanged) {
  std::mt19937_64 g(6);
  for (int p : {2, 3, 4}) {
    const int N = 5;
    auto T = symmetrize(random_tensor(p, N, g));
    auto Q = random_orthogonal(N, g);
    auto TQ = conjugate_orthogonal(T, Q);
    for (int n = 1; n <= (p == 4 ? 2 : 3); ++n)
      for (const auto& m : enumerate_bn(p, n)) {
        if ((p * n) % 2) continue;
        EXPECT_NEAR(eval_trace_invariant(m, TQ), eval_trace_invariant(m, T), 1e-9) << canonical_code(m).str();
      }
  }
  std::vector<double> I(16, 0.0);
  for (int i = 0; i < 4; ++i) I[static_cast<std::size_t>(5 * i)] = 1;
  auto T = random_tensor(3, 4, g);
  auto TI = conjugate_orthogonal(T, I);
  for (std::size_t i = 0; i < T.size(); ++i) EXPECT_NEAR(TI[i], T[i], 1e-15);
}

TEST(Orthogonal, MatrixConjugation) {
  std::mt19937_64 g(7);
  const int N = 4;
  auto M = random_tensor(2, N, g);
  auto U = random_orthogonal(N, g);
  auto R = conjugate_orthogonal(M, U);
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> Mm(M.data().data(), N, N),
      Um(U.data(), N, N), Rm(R.data().data(), N, N);
  Eigen::MatrixXd want = Um * Mm * Um.transpose();
  EXPECT_LT((Rm - want).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(DenseTensor, DumpLoadRoundTrip) {
  std::mt19937_64 g(8);
  auto T = symmetrize(random_tensor(3, 3, g));
  T.set_symmetric(true);
  std::stringstream ss;
  dump_tensor(ss, T);
  auto back = load_tensor(ss);
  EXPECT_EQ(back.order(), 3);
  EXPECT_EQ(back.dim(), 3);
  EXPECT_TRUE(back.symmetric());
  EXPECT_EQ(back.data(), T.data());
  std::stringstream bad("{\"p\":2,\"N\":3}\n\x01\x02");
  EXPECT_THROW(load_tensor(bad), IoError);
}

TEST(DenseTensor, Errors) {
  EXPECT_THROW(DenseTensor(2, 0), DomainError);
  EXPECT_THROW(tensor_entries(40, 10), ResourceError);
  EXPECT_THROW(DenseTensor(2, 2, {1, 2, 3}), DomainError);
  EXPECT_THROW(DenseTensor(1, 2, {1, std::nan("")}), DomainError);
  auto M = identity_matrix(3);
  EXPECT_THROW(eval_trace_invariant(melon(3, Permutation::identity(3)), M), DomainError);
  DenseTensor A(2, 3), B(2, 4);
  EXPECT_THROW(A += B, DomainError);
}
