#include "tfp/ensembles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "tfp/canonical.hpp"
#include "tfp/contraction.hpp"
#include "tfp/enumerate.hpp"
#include "tfp/errors.hpp"

namespace tfp {

namespace {

double factorial_d(int n) {
  double r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

// A draw of variance var.
double draw(EntryLaw law, double var, std::mt19937_64& rng) {
  const double sd = std::sqrt(var);
  if (law == EntryLaw::rademacher) return (rng() >> 63) ? sd : -sd;
  std::normal_distribution<double> g(0.0, sd);
  return g(rng);
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

std::string family_name(Family f) { return f == Family::wigner ? "wigner" : "wishart"; }
std::string law_name(EntryLaw l) { return l == EntryLaw::gaussian ? "gaussian" : "rademacher"; }
std::string scaling_name(WishartScaling s) { return s == WishartScaling::literal ? "literal" : "moment_matched"; }

Family parse_family(const std::string& s) {
  if (s == "wigner") return Family::wigner;
  if (s == "wishart") return Family::wishart;
  throw DomainError("unknown ensemble family: " + s);
}
EntryLaw parse_entry_law(const std::string& s) {
  if (s == "gaussian") return EntryLaw::gaussian;
  if (s == "rademacher") return EntryLaw::rademacher;
  throw DomainError("unknown entry law: " + s);
}
WishartScaling parse_scaling(const std::string& s) {
  if (s == "literal") return WishartScaling::literal;
  if (s == "moment_matched") return WishartScaling::moment_matched;
  throw DomainError("unknown wishart scaling: " + s);
}

void EnsembleConfig::validate() const {
  if (p < 1) throw DomainError("ensemble: p must be >= 1");
  if (N < 1) throw DomainError("ensemble: N must be >= 1");
  if (superpose < 1) throw DomainError("ensemble: superposition count must be >= 1");
  if (threads < 1) throw DomainError("ensemble: threads must be >= 1");
  if (family == Family::wishart) {
    if (k < 0) throw DomainError("ensemble: k must be >= 1");
    if (k == 0 && !(t > 0)) throw DomainError("ensemble: t must be positive");
    if (p % 2 == 1) {
      const int a = split();
      if (a < 1 || a >= p) throw DomainError("ensemble: split needs 1 <= p1 < p");
      if (scaling == WishartScaling::moment_matched)
        throw DomainError("ensemble: moment_matched scaling needs even p");
    }
    if (rank() < 1) throw DomainError("ensemble: k must be >= 1");
  }
}

long EnsembleConfig::rank() const {
  if (k > 0) return k;
  if (scaling == WishartScaling::moment_matched) return std::lround(2.0 * t * N / p);
  return std::lround(t * std::pow(static_cast<double>(N), p / 2.0));
}

std::string EnsembleConfig::to_json() const {
  nlohmann::json j;
  j["family"] = family_name(family);
  j["p"] = p;
  j["N"] = N;
  j["law"] = law_name(law);
  if (family == Family::wishart) {
    j["k"] = rank();
    j["t"] = t;
    j["scaling"] = scaling_name(scaling);
    if (p % 2 == 1) j["p1"] = split();
  }
  j["superpose"] = superpose;
  j["seed"] = seed;
  return j.dump();
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(trial)));
}

double wigner_class_variance(std::span<const int> idx) {
  std::vector<int> s(idx.begin(), idx.end());
  std::sort(s.begin(), s.end());
  const int p = static_cast<int>(s.size());
  double P = factorial_d(p);
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    P /= factorial_d(static_cast<int>(j - i));
    i = j;
  }
  return p / P;
}

DenseTensor sample_wigner(const EnsembleConfig& c, std::mt19937_64& rng) {
  if (c.family != Family::wigner) throw DomainError("sample_wigner: family must be wigner");
  c.validate();
  const int p = c.p, N = c.N;
  DenseTensor T(p, N);
  const double scale = std::pow(static_cast<double>(N), -(p - 1) / 2.0);
  std::vector<int> idx(static_cast<std::size_t>(p), 0), perm(static_cast<std::size_t>(p));
  // sorted multi-indices in lexicographic order, one draw each
  while (true) {
    const double x = draw(c.law, wigner_class_variance(idx), rng) * scale;
    perm = idx;
    do T[T.offset(perm)] = x;
    while (std::next_permutation(perm.begin(), perm.end()));
    int k = p - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == N - 1) --k;
    if (k < 0) break;
    const int v = idx[static_cast<std::size_t>(k)] + 1;
    for (int j = k; j < p; ++j) idx[static_cast<std::size_t>(j)] = v;
  }
  T.set_symmetric(true);
  return T;
}

DenseTensor sample_wishart(const EnsembleConfig& c, std::mt19937_64& rng) {
  if (c.family != Family::wishart) throw DomainError("sample_wishart: family must be wishart");
  c.validate();
  const int p = c.p, N = c.N;
  const int a = p % 2 == 0 ? p / 2 : c.split();
  const int b = p - a;
  const long k = c.rank();
  double va, vb;
  if (p % 2 == 0) {
    va = vb = c.scaling == WishartScaling::moment_matched ? p / 2.0
                                                          : 1.0 / std::pow(factorial_d(p / 2), 2.0 / p);
  } else {
    va = 1.0 / std::pow(factorial_d(a), 1.0 / p);
    vb = 1.0 / std::pow(factorial_d(b), 1.0 / p);
  }
  const auto da = static_cast<Eigen::Index>(tensor_entries(a, N));
  const auto db = static_cast<Eigen::Index>(tensor_entries(b, N));
  tensor_entries(p, N);
  RowMat X(k, da);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index j = 0; j < da; ++j) X(r, j) = draw(c.law, va, rng);
  DenseTensor sum(p, N);
  Eigen::Map<RowMat> S(sum.data().data(), da, db);
  if (p % 2 == 0) {
    S.noalias() = X.transpose() * X;
  } else {
    RowMat Y(k, db);
    for (Eigen::Index r = 0; r < k; ++r)
      for (Eigen::Index j = 0; j < db; ++j) Y(r, j) = draw(c.law, vb, rng);
    S.noalias() = X.transpose() * Y;
  }
  // sum_l x_l (x) y_l, then one symmetrization (linear)
  DenseTensor W = symmetrize(sum);
  W *= std::pow(static_cast<double>(N), -p / 2.0);
  return W;
}

DenseTensor clt_superposition(int k, const Sampler& base, std::mt19937_64& rng) {
  if (k < 1) throw DomainError("clt_superposition: k must be >= 1");
  DenseTensor T = base(rng);
  if (k == 1) return T;
  const bool sym = T.symmetric();
  for (int i = 1; i < k; ++i) T += base(rng);
  T *= 1.0 / std::sqrt(static_cast<double>(k));
  T.set_symmetric(sym);
  return T;
}

DenseTensor sample(const EnsembleConfig& c, std::mt19937_64& rng) {
  Sampler base = [&c](std::mt19937_64& g) {
    return c.family == Family::wigner ? sample_wigner(c, g) : sample_wishart(c, g);
  };
  return clt_superposition(c.superpose, base, rng);
}

std::string MonteCarloReport::to_json() const {
  nlohmann::json j;
  j["config"] = nlohmann::json::parse(config.to_json());
  j["statistic"] = statistic;
  if (statistic == "map") j["map"] = map_code;
  else j["n"] = n;
  j["mean"] = mean;
  j["stderr"] = stderr_;
  j["variance"] = variance;
  j["trials"] = trials;
  j["seed"] = config.seed;
  return j.dump();
}

void summarize(const std::vector<double>& v, MonteCarloReport& r) {
  r.trials = static_cast<long>(v.size());
  if (v.empty()) throw DomainError("summarize: no trials");
  r.mean = pairwise_sum(v.data(), v.size()) / static_cast<double>(v.size());
  std::vector<double> d(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) d[i] = (v[i] - r.mean) * (v[i] - r.mean);
  r.variance = v.size() > 1 ? pairwise_sum(d.data(), d.size()) / static_cast<double>(v.size() - 1) : 0.0;
  r.stderr_ = std::sqrt(r.variance / static_cast<double>(v.size()));
}

std::vector<std::vector<double>> run_trials(const EnsembleConfig& c, long trials,
                                            const std::function<std::vector<double>(long, std::mt19937_64&)>& f) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  std::vector<std::vector<double>> out(static_cast<std::size_t>(trials));
  std::atomic<long> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (long i; (i = next.fetch_add(1)) < trials;) {
      try {
        auto rng = trial_rng(c.seed, static_cast<std::uint64_t>(i));
        out[static_cast<std::size_t>(i)] = f(i, rng);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!err) err = std::current_exception();
        next = trials;
      }
    }
  };
  const int nt = static_cast<int>(std::min<long>(c.threads, trials));
  if (nt <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);
  return out;
}

MonteCarloReport estimate_map(const CombMap& m, const EnsembleConfig& c, long trials) {
  c.validate();
  if (m.uniform_degree() != c.p) throw DomainError("estimate_map: map degrees must equal p");
  const auto plan = plan_contraction(m, c.N);
  auto rows = run_trials(c, trials, [&](long, std::mt19937_64& rng) {
    DenseTensor T = sample(c, rng);
    std::vector<const DenseTensor*> ts(static_cast<std::size_t>(m.vertices()), &T);
    return std::vector<double>{execute_plan(plan, ts)};
  });
  std::vector<double> v;
  for (auto& r : rows) v.push_back(r[0]);
  MonteCarloReport rep;
  rep.config = c;
  rep.statistic = "map";
  rep.map_code = canonical_code(m).str();
  summarize(v, rep);
  return rep;
}

std::vector<std::pair<CombMap, int>> multigraph_groups(const std::vector<CombMap>& classes) {
  std::map<std::vector<int>, std::size_t> index;
  std::vector<std::pair<CombMap, int>> out;
  for (const auto& m : classes) {
    const int n = m.vertices();
    std::vector<int> adj(static_cast<std::size_t>(n * n), 0);
    for (const auto& e : m.edges()) {
      int u = m.vertex_of(e.a), w = m.vertex_of(e.b);
      ++adj[static_cast<std::size_t>(u * n + w)];
      if (u != w) ++adj[static_cast<std::size_t>(w * n + u)];
    }
    std::vector<int> perm(static_cast<std::size_t>(n)), best, cur;
    std::iota(perm.begin(), perm.end(), 0);
    do {
      cur.clear();
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
          cur.push_back(adj[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)] * n + perm[static_cast<std::size_t>(j)])]);
      if (best.empty() || cur < best) best = cur;
    } while (std::next_permutation(perm.begin(), perm.end()));
    best.insert(best.begin(), n);
    auto it = index.find(best);
    if (it == index.end()) {
      index.emplace(best, out.size());
      out.emplace_back(m, 1);
    } else {
      ++out[it->second].second;
    }
  }
  return out;
}

std::vector<MonteCarloReport> estimate_moments(const EnsembleConfig& c, int n_max, long trials,
                                               const std::filesystem::path& cache_dir) {
  c.validate();
  if (n_max < 1) throw DomainError("estimate_moments: n_max must be >= 1");
  struct Term {
    ContractionPlan plan;
    int vertices;
    int weight;
  };
  std::vector<std::vector<Term>> terms(static_cast<std::size_t>(n_max + 1));
  for (int n = 1; n <= n_max; ++n) {
    if ((c.p * n) % 2) continue;
    const Atlas a = load_or_build_atlas(c.p, n, cache_dir);
    std::vector<CombMap> reps;
    for (const auto& e : a.entries) reps.push_back(e.map);
    for (auto& [m, w] : multigraph_groups(reps))
      terms[static_cast<std::size_t>(n)].push_back({plan_contraction(m, c.N), m.vertices(), w});
  }
  auto rows = run_trials(c, trials, [&](long, std::mt19937_64& rng) {
    DenseTensor T = sample(c, rng);
    std::vector<double> r(static_cast<std::size_t>(n_max), 0.0);
    for (int n = 1; n <= n_max; ++n) {
      double s = 0;
      for (const auto& tm : terms[static_cast<std::size_t>(n)]) {
        std::vector<const DenseTensor*> ts(static_cast<std::size_t>(tm.vertices), &T);
        s += tm.weight * execute_plan(tm.plan, ts);
      }
      r[static_cast<std::size_t>(n - 1)] = s;
    }
    return r;
  });
  std::vector<MonteCarloReport> out;
  for (int n = 1; n <= n_max; ++n) {
    std::vector<double> v;
    for (auto& r : rows) v.push_back(r[static_cast<std::size_t>(n - 1)]);
    MonteCarloReport rep;
    rep.config = c;
    rep.statistic = "m_n";
    rep.n = n;
    summarize(v, rep);
    out.push_back(std::move(rep));
  }
  return out;
}

std::string ladder_csv(const std::vector<MonteCarloReport>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "statistic,N,mean,stderr,trials\n";
  for (const auto& r : rows) {
    os << (r.statistic == "map" ? "map:" + r.map_code : "m_" + std::to_string(r.n)) << ',' << r.config.N << ','
       << r.mean << ',' << r.stderr_ << ',' << r.trials << '\n';
  }
  return os.str();
}

}  // namespace tfp
