#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "tfp/comb_map.hpp"
#include "tfp/dense_tensor.hpp"

namespace tfp {

enum class Family { wigner, wishart };
enum class EntryLaw { gaussian, rademacher };
// literal: x entries of variance 1/eta_p, k = round(t N^{p/2}).
// moment_matched (even p): variance p/2, k = round(2 t N / p).
enum class WishartScaling { literal, moment_matched };

struct EnsembleConfig {
  Family family = Family::wigner;
  int p = 3;
  int N = 8;
  EntryLaw law = EntryLaw::gaussian;
  long k = 0;      // wishart rank; 0 means derive from t
  double t = 1.0;  // wishart ratio
  int p1 = 0;      // odd split, 0 means (p+1)/2
  WishartScaling scaling = WishartScaling::literal;
  int superpose = 1;  // > 1: k^{-1/2}-scaled sum of that many draws
  std::uint64_t seed = 0;
  int threads = 1;

  void validate() const;
  int split() const { return p1 ? p1 : (p + 1) / 2; }
  long rank() const;
  std::string to_json() const;
};

std::string family_name(Family f);
std::string law_name(EntryLaw l);
std::string scaling_name(WishartScaling s);
Family parse_family(const std::string& s);
EntryLaw parse_entry_law(const std::string& s);
WishartScaling parse_scaling(const std::string& s);

std::uint64_t splitmix64(std::uint64_t x);
// Generator of trial i: seeded with splitmix64(seed ^ splitmix64(i)).
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

// Pre-scaling variance p / P_i of the class of i (P_i distinct rearrangements).
double wigner_class_variance(std::span<const int> idx);
DenseTensor sample_wigner(const EnsembleConfig& c, std::mt19937_64& rng);
DenseTensor sample_wishart(const EnsembleConfig& c, std::mt19937_64& rng);
// Dispatches on family, then applies the superposition if requested.
DenseTensor sample(const EnsembleConfig& c, std::mt19937_64& rng);

using Sampler = std::function<DenseTensor(std::mt19937_64&)>;
DenseTensor clt_superposition(int k, const Sampler& base, std::mt19937_64& rng);

struct MonteCarloReport {
  EnsembleConfig config;
  std::string statistic;  // "m_n" or "map"
  int n = 0;
  std::string map_code;
  double mean = 0;
  double variance = 0;  // sample variance of the per-trial values
  double stderr_ = 0;
  long trials = 0;
  std::string to_json() const;
};

// Mean and unbiased variance of values, summed pairwise in index order.
void summarize(const std::vector<double>& values, MonteCarloReport& r);

// Runs f(trial, rng) for every trial on config.threads workers; row i of the
// result belongs to trial i whatever the schedule.
std::vector<std::vector<double>> run_trials(const EnsembleConfig& c, long trials,
                                            const std::function<std::vector<double>(long, std::mt19937_64&)>& f);

MonteCarloReport estimate_map(const CombMap& m, const EnsembleConfig& c, long trials);
// m_n(sample) = sum over rooted classes of B_n of the invariant, n = 1..n_max.
// Classes with the same underlying multigraph share one evaluation (valid
// because samples are symmetric).
std::vector<MonteCarloReport> estimate_moments(const EnsembleConfig& c, int n_max, long trials,
                                               const std::filesystem::path& cache_dir);

// Group classes of B_n by multigraph; returns (representative, multiplicity).
std::vector<std::pair<CombMap, int>> multigraph_groups(const std::vector<CombMap>& classes);

// "statistic,N,mean,stderr,trials" rows.
std::string ladder_csv(const std::vector<MonteCarloReport>& rows);

}  // namespace tfp
