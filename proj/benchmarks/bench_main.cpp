#include <benchmark/benchmark.h>

#include "tfp/contraction.hpp"
#include "tfp/ensembles.hpp"
#include "tfp/enumerate.hpp"
#include "tfp/laws.hpp"
#include "tfp/poset.hpp"

namespace {

void BM_EnumerateBn(benchmark::State& st) {
  const int p = static_cast<int>(st.range(0)), n = static_cast<int>(st.range(1));
  std::size_t classes = 0;
  for (auto _ : st) {
    auto b = tfp::enumerate_bn(p, n);
    classes = b.size();
    benchmark::DoNotOptimize(b.data());
  }
  st.counters["classes"] = static_cast<double>(classes);
}
BENCHMARK(BM_EnumerateBn)->Args({3, 4})->Args({4, 3})->Args({2, 8})->Args({6, 2})->Unit(benchmark::kMillisecond);

void BM_DownSet(benchmark::State& st) {
  auto maps = tfp::enumerate_bn(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  std::size_t nodes = 0;
  for (auto _ : st) {
    nodes = 0;
    for (const auto& m : maps) nodes += tfp::DownSet(m).size();
    benchmark::DoNotOptimize(nodes);
  }
  st.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_DownSet)->Args({4, 2})->Args({3, 4})->Args({4, 3})->Unit(benchmark::kMillisecond);

void BM_MomentRecursion(benchmark::State& st) {
  const int K = static_cast<int>(st.range(0));
  auto c = tfp::free_poisson_cumulants<tfp::Rational>(4, tfp::Rational(1, 3), K);
  for (auto _ : st) benchmark::DoNotOptimize(tfp::moments_from_cumulants(c));
}
BENCHMARK(BM_MomentRecursion)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_MomentRecursionSymbolic(benchmark::State& st) {
  const int K = static_cast<int>(st.range(0));
  auto c = tfp::free_poisson_cumulants<tfp::QPoly>(4, tfp::QPoly::var(), K);
  for (auto _ : st) benchmark::DoNotOptimize(tfp::moments_from_cumulants(c));
}
BENCHMARK(BM_MomentRecursionSymbolic)->Arg(10)->Arg(20)->Unit(benchmark::kMicrosecond);

tfp::DenseTensor wigner(int p, int N) {
  tfp::EnsembleConfig c;
  c.p = p;
  c.N = N;
  auto rng = tfp::trial_rng(1, 0);
  return tfp::sample_wigner(c, rng);
}

void BM_ContractPlanned(benchmark::State& st) {
  const int N = static_cast<int>(st.range(0));
  auto T = wigner(3, N);
  auto m = tfp::odd_multicycle(3, 2);
  for (auto _ : st) benchmark::DoNotOptimize(tfp::eval_trace_invariant(m, T));
}
BENCHMARK(BM_ContractPlanned)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_ContractNaive(benchmark::State& st) {
  const int N = static_cast<int>(st.range(0));
  auto T = wigner(3, N);
  auto m = tfp::odd_multicycle(3, 2);
  std::vector<const tfp::DenseTensor*> ts(static_cast<std::size_t>(m.vertices()), &T);
  for (auto _ : st) benchmark::DoNotOptimize(tfp::eval_naive(m, ts));
}
BENCHMARK(BM_ContractNaive)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_SampleWigner(benchmark::State& st) {
  tfp::EnsembleConfig c;
  c.p = 3;
  c.N = static_cast<int>(st.range(0));
  auto rng = tfp::trial_rng(2, 0);
  for (auto _ : st) benchmark::DoNotOptimize(tfp::sample_wigner(c, rng));
}
BENCHMARK(BM_SampleWigner)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_SampleWishart(benchmark::State& st) {
  tfp::EnsembleConfig c;
  c.family = tfp::Family::wishart;
  c.p = 4;
  c.N = static_cast<int>(st.range(0));
  auto rng = tfp::trial_rng(3, 0);
  for (auto _ : st) benchmark::DoNotOptimize(tfp::sample_wishart(c, rng));
}
BENCHMARK(BM_SampleWishart)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
