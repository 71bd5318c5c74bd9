#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "../selftest/acceptance.hpp"
#include "tfp/canonical.hpp"
#include "tfp/contraction.hpp"
#include "tfp/distribution.hpp"
#include "tfp/ensembles.hpp"
#include "tfp/enumerate.hpp"
#include "tfp/errors.hpp"
#include "tfp/laws.hpp"
#include "tfp/poset.hpp"

namespace {

using tfp::Rational;
using ojson = nlohmann::ordered_json;

// exit 1
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string output;
  std::string format = "json";
  std::string cache_dir;
  bool no_cache = false;

  std::filesystem::path cache() const {
    if (no_cache) return {};
    if (!cache_dir.empty()) return cache_dir;
    return tfp::default_cache_dir();
  }
};

void add_common(CLI::App* sc, Common& c, const std::string& default_format) {
  c.format = default_format;
  sc->add_option("-o,--output", c.output, "write here instead of stdout");
  sc->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sc->add_option("--cache-dir", c.cache_dir, "atlas cache (default: $TFP_CACHE_DIR or ~/.cache/tfp)");
  sc->add_flag("--no-cache", c.no_cache, "always enumerate afresh");
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw tfp::IoError("cannot write " + c.output);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

// CSV has no room for the config; it goes to <output>.config.json, or stderr.
void emit_csv(const Common& c, const std::string& csv, const ojson& config) {
  emit(c, csv);
  if (c.output.empty()) {
    std::cerr << "config: " << config.dump() << '\n';
  } else {
    std::ofstream f(c.output + ".config.json");
    f << config.dump(2) << '\n';
  }
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw tfp::DomainError("bad integer list: " + s);
    }
    if (pos != tok.size()) throw tfp::DomainError("bad integer list: " + s);
    out.push_back(v);
  }
  if (out.empty()) throw tfp::DomainError("empty integer list");
  return out;
}

ojson series_json(const tfp::Series<Rational>& s) {
  ojson a = ojson::array();
  for (const auto& x : s.coeffs()) a.push_back(tfp::to_string(x));
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw tfp::IoError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// --- enumerate ---
struct EnumerateArgs {
  Common c;
  int p = 0, n = 0, cap = tfp::kDefaultEnumerationCap;
};

int run_enumerate(const EnumerateArgs& a) {
  const tfp::Atlas atlas = tfp::load_or_build_atlas(a.p, a.n, a.c.cache(), a.cap);
  ojson config{{"subcommand", "enumerate"}, {"p", a.p}, {"n", a.n}, {"cap", a.cap}, {"convention", atlas.convention}};
  if (a.c.format == "csv") {
    std::ostringstream os;
    os << "index,code,vertices,edges\n";
    for (std::size_t i = 0; i < atlas.entries.size(); ++i)
      os << i << ",\"" << atlas.entries[i].code.str() << "\"," << atlas.entries[i].map.vertices() << ','
         << atlas.entries[i].map.edges_count() << '\n';
    emit_csv(a.c, os.str(), config);
    return 0;
  }
  ojson out{{"config", config}, {"atlas", ojson::parse(tfp::atlas_to_json(atlas))}};
  emit(a.c, out.dump(1));
  return 0;
}

// --- poset ---
struct PosetArgs {
  Common c;
  std::string code;
  int p = 0, n = 0, index = -1;
};

int run_poset(const PosetArgs& a) {
  tfp::CombMap top;
  if (!a.code.empty()) {
    top = tfp::map_from_code(tfp::CanonicalCode::parse(a.code));
  } else {
    if (a.p < 1 || a.n < 1 || a.index < 0) throw tfp::DomainError("poset: give --code, or --p, --n and --index");
    const auto atlas = tfp::load_or_build_atlas(a.p, a.n, a.c.cache());
    if (static_cast<std::size_t>(a.index) >= atlas.entries.size())
      throw tfp::DomainError("poset: index out of range, B_n has " + std::to_string(atlas.entries.size()) + " classes");
    top = atlas.entries[static_cast<std::size_t>(a.index)].map;
  }
  tfp::DownSet ds(top);
  const auto& mu = ds.moebius_to_top();
  const auto mins = ds.minimal();
  ojson config{{"subcommand", "poset"}, {"code", tfp::canonical_code(top).str()}};
  if (a.c.format == "csv") {
    std::ostringstream os;
    os << "index,gamma,moebius_to_top,minimal,code\n";
    for (std::size_t i = 0; i < ds.size(); ++i)
      os << i << ',' << ds.gamma(i) << ',' << mu[i] << ','
         << (std::find(mins.begin(), mins.end(), i) != mins.end() ? 1 : 0) << ",\""
         << tfp::canonical_code(ds.node(i)).str() << "\"\n";
    emit_csv(a.c, os.str(), config);
    return 0;
  }
  ojson nodes = ojson::array();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    ojson pairing = ojson::array();
    const auto& al = ds.pairing(i);
    for (std::size_t h = 0; h < al.size(); ++h)
      if (static_cast<int>(h) < al[h]) pairing.push_back({h + 1, al[h] + 1});
    nodes.push_back({{"index", i},
                     {"gamma", ds.gamma(i)},
                     {"moebius_to_top", mu[i]},
                     {"code", tfp::canonical_code(ds.node(i)).str()},
                     {"pairing", pairing},
                     {"upper_covers", ds.upper_covers(i)}});
  }
  ojson cyc = ojson::array();
  for (const auto& cy : top.cycles()) {
    ojson v = ojson::array();
    for (int h : cy) v.push_back(h + 1);
    cyc.push_back(v);
  }
  ojson out{{"config", config}, {"cycles", cyc}, {"size", ds.size()}, {"minimal", mins}, {"nodes", nodes}};
  emit(a.c, out.dump(1));
  return 0;
}

// --- laws ---
struct LawsArgs {
  Common c;
  std::string family = "semicircular";
  int p = 2, K = 10;
  std::string t = "1", tau = "1", factor;
  std::string source = "series";
};

tfp::LawSpec law_spec(const std::string& family, int p, const std::string& t, const std::string& tau,
                      const std::string& factor) {
  tfp::LawSpec s;
  s.family = tfp::parse_law_family(family);
  s.p = p;
  s.t = tfp::parse_rational(t);
  s.tau = tfp::parse_rational(tau);
  if (!factor.empty()) s.factor = tfp::parse_rational(factor);
  return s;
}

int run_laws(const LawsArgs& a) {
  const auto spec = law_spec(a.family, a.p, a.t, a.tau, a.factor);
  ojson config{{"subcommand", "laws"}, {"family", tfp::law_name(spec.family)}, {"p", a.p},   {"K", a.K},
               {"t", tfp::to_string(spec.t)}, {"tau", tfp::to_string(spec.tau)}, {"source", a.source}};
  if (spec.factor) config["factor"] = tfp::to_string(*spec.factor);
  if (a.source == "maps") {
    tfp::MapDistribution d = spec.family == tfp::LawFamily::semicircular   ? tfp::semicircular_map(a.p)
                             : spec.family == tfp::LawFamily::free_poisson ? tfp::free_poisson_map(a.p)
                                                                            : throw tfp::DomainError("laws --source maps: semicircular or free_poisson only");
    auto rows = tfp::map_moment_table(d, a.K, a.c.cache());
    if (a.c.format == "csv") {
      emit_csv(a.c, tfp::map_moment_csv(rows, spec.t), config);
      return 0;
    }
    ojson m = ojson::array(), k = ojson::array();
    for (const auto& r : rows) {
      m.push_back(r.moment.str("t"));
      k.push_back(r.cumulant ? ojson(r.cumulant->str("t")) : ojson(nullptr));
    }
    emit(a.c, ojson{{"config", config}, {"moments_from_1", m}, {"cumulants_from_1", k}}.dump(1));
    return 0;
  }
  if (a.c.format == "csv") {
    emit_csv(a.c, tfp::law_table_csv({spec}, a.K), config);
    return 0;
  }
  auto m = tfp::law_moments(spec, a.K);
  ojson out{{"config", config}, {"moments", series_json(m.s)}};
  try {
    out["cumulants"] = series_json(tfp::law_cumulants(spec, a.K).s);
  } catch (const tfp::ParityError&) {
    out["cumulants"] = nullptr;
  }
  emit(a.c, out.dump(1));
  return 0;
}

// --- convolve ---
struct ConvolveArgs {
  Common c;
  std::string a, b;
  int p = 4;
};

int run_convolve(const ConvolveArgs& a) {
  auto sa = tfp::series_from_json(read_file(a.a));
  auto sb = tfp::series_from_json(read_file(a.b));
  const int K = std::min(sa.K(), sb.K());
  tfp::MomentSeries<Rational> ma{a.p, sa.truncated(K)}, mb{a.p, sb.truncated(K)};
  auto r = tfp::free_convolve(ma, mb);
  ojson config{{"subcommand", "convolve"}, {"p", a.p}, {"K", K}, {"a", a.a}, {"b", a.b}};
  if (a.c.format == "csv") {
    std::ostringstream os;
    os << "n,m_n\n";
    for (int n = 0; n <= K; ++n) os << n << ',' << tfp::to_string(r[n]) << '\n';
    emit_csv(a.c, os.str(), config);
    return 0;
  }
  emit(a.c, ojson{{"config", config}, {"moments", series_json(r.s)}}.dump(1));
  return 0;
}

// --- transform ---
struct TransformArgs {
  Common c;
  std::string kind = "r";
  std::string input, family;
  int p = 4, K = 10;
  std::string t = "1", tau = "1";
};

int run_transform(const TransformArgs& a) {
  tfp::MomentSeries<Rational> m;
  if (!a.input.empty()) {
    m = {a.p, tfp::series_from_json(read_file(a.input))};
  } else if (!a.family.empty()) {
    m = tfp::law_moments(law_spec(a.family, a.p, a.t, a.tau, ""), a.K);
  } else {
    throw tfp::DomainError("transform: give --input or --family");
  }
  ojson config{{"subcommand", "transform"}, {"kind", a.kind}, {"p", a.p}, {"K", m.K()}};
  if (!a.input.empty()) config["input"] = a.input;
  else config["family"] = a.family, config["t"] = a.t, config["tau"] = a.tau;
  ojson out{{"config", config}};
  auto c = tfp::cumulants_from_moments(m);
  bool ok = true;
  if (a.kind == "r") {
    out["r"] = series_json(tfp::r_transform(c));
  } else if (a.kind == "q") {
    out["q"] = series_json(tfp::q_transform(c));
  } else if (a.kind == "cauchy") {
    // G(z) = sum_n h_n z^{-n-1} with H = M^{p/2}
    if (m.p % 2) throw tfp::DomainError("transform cauchy: order must be even");
    out["g_coefficients_of_z_pow_minus_n_minus_1"] = series_json(m.s.pow(m.p / 2));
  } else if (a.kind == "kg") {
    const bool kg = tfp::cauchy_pair_check(m, c), gk = tfp::cauchy_pair_check_gk(m, c);
    out["k_of_g_is_z"] = kg;
    out["g_of_k_is_z"] = gk;
    out["functional"] = tfp::verify_functional(m, c);
    ok = kg && gk;
  } else {
    throw tfp::DomainError("transform: kind must be r, q, cauchy or kg");
  }
  emit(a.c, out.dump(1));
  if (!ok) throw CheckFailed("K(G(z)) = z check failed");
  return 0;
}

// --- simulate ---
struct SimulateArgs {
  Common c;
  std::string family;
  int p = 3, n_max = 4, p1 = 0, superpose = 1;
  std::string Ns = "8,16,32";
  long trials = 200, k = 0;
  std::uint64_t seed = 0;
  double t = 1.0;
  std::string law = "gaussian", scaling = "literal", map;
  int threads = 1;
};

int run_simulate(const SimulateArgs& a) {
  std::vector<tfp::MonteCarloReport> rows;
  ojson config{{"subcommand", "simulate"}, {"family", a.family}, {"p", a.p},        {"N", a.Ns},
               {"trials", a.trials},       {"seed", a.seed},     {"law", a.law},    {"n_max", a.n_max},
               {"superpose", a.superpose}};
  if (a.family == "wishart") config["t"] = a.t, config["k"] = a.k, config["scaling"] = a.scaling, config["p1"] = a.p1;
  if (!a.map.empty()) config["map"] = a.map;
  for (int N : parse_int_list(a.Ns)) {
    tfp::EnsembleConfig cfg;
    cfg.family = tfp::parse_family(a.family);
    cfg.p = a.p;
    cfg.N = N;
    cfg.law = tfp::parse_entry_law(a.law);
    cfg.k = a.k;
    cfg.t = a.t;
    cfg.p1 = a.p1;
    cfg.scaling = tfp::parse_scaling(a.scaling);
    cfg.superpose = a.superpose;
    cfg.seed = a.seed;
    cfg.threads = a.threads;
    if (!a.map.empty()) {
      rows.push_back(tfp::estimate_map(tfp::map_from_code(tfp::CanonicalCode::parse(a.map)), cfg, a.trials));
    } else {
      for (auto& r : tfp::estimate_moments(cfg, a.n_max, a.trials, a.c.cache())) rows.push_back(std::move(r));
    }
  }
  if (a.c.format == "csv") {
    emit_csv(a.c, tfp::ladder_csv(rows), config);
    return 0;
  }
  ojson reps = ojson::array();
  for (const auto& r : rows) reps.push_back(ojson::parse(r.to_json()));
  emit(a.c, ojson{{"config", config}, {"reports", reps}}.dump(1));
  return 0;
}

// --- clt ---
struct CltArgs {
  Common c;
  int p = 4, K = 10;
  std::string ks = "10,100,1000";
  std::string kappa;  // kappa_1..kappa_K, default 0,1,1,1,...
};

int run_clt(const CltArgs& a) {
  tfp::Series<Rational> s = tfp::Series<Rational>::one(a.K);
  if (a.kappa.empty()) {
    for (int n = 2; n <= a.K; ++n) s[n] = 1;
  } else {
    std::vector<Rational> vals;
    std::stringstream ss(a.kappa);
    for (std::string tok; std::getline(ss, tok, ',');) vals.push_back(tfp::parse_rational(tok));
    if (static_cast<int>(vals.size()) < a.K) throw tfp::DomainError("clt: need kappa_1..kappa_K");
    for (int n = 1; n <= a.K; ++n) s[n] = vals[n - 1];
  }
  tfp::CumulantSeries<Rational> kap{a.p, s};
  auto sym = tfp::clt_rescale_symbolic(kap);
  auto m = tfp::moments_from_cumulants(sym);
  bool exact = sym[1].is_zero();
  for (int n = 2; n <= a.K; ++n) exact = exact && sym[n] == tfp::QPoly::monomial(s[n], n - 2);
  ojson config{{"subcommand", "clt"}, {"p", a.p}, {"K", a.K}, {"k", a.ks}, {"kappa", series_json(s)}};
  std::ostringstream os;
  os.precision(17);
  os << "k,n,kappa_n,m_n,m_n_limit\n";
  ojson table = ojson::array();
  for (int k : parse_int_list(a.ks)) {
    if (k < 1) throw tfp::DomainError("clt: k must be >= 1");
    const long double eps = 1.0L / std::sqrt(static_cast<long double>(k));
    for (int n = 1; n <= a.K; ++n) {
      const long double kv = sym[n].eval(eps), mv = m[n].eval(eps), lim = m[n].eval(0.0L);
      os << k << ',' << n << ',' << static_cast<double>(kv) << ',' << static_cast<double>(mv) << ','
         << static_cast<double>(lim) << '\n';
      table.push_back({{"k", k}, {"n", n}, {"kappa_n", static_cast<double>(kv)}, {"m_n", static_cast<double>(mv)},
                       {"m_n_limit", static_cast<double>(lim)}});
    }
  }
  if (a.c.format == "csv") {
    emit_csv(a.c, os.str(), config);
  } else {
    ojson sc = ojson::array(), sm = ojson::array();
    for (int n = 0; n <= a.K; ++n) sc.push_back(sym[n].str("eps")), sm.push_back(m[n].str("eps"));
    emit(a.c, ojson{{"config", config}, {"exact", exact}, {"cumulants_in_eps", sc}, {"moments_in_eps", sm}, {"table", table}}.dump(1));
  }
  if (!exact) throw CheckFailed("rescaled cumulants are not k^{1-n/2} kappa_n");
  return 0;
}

// --- selftest ---
struct SelftestArgs {
  Common c;
  std::vector<int> criteria;
  int threads = 0;
  bool quiet = false;
};

int run_selftest(const SelftestArgs& a) {
  tfp::acceptance::Options opt;
  opt.cache_dir = a.c.cache();
  opt.threads = a.threads > 0 ? a.threads : std::max(1u, std::thread::hardware_concurrency());
  opt.verbose = !a.quiet;
  std::vector<int> ids = a.criteria;
  if (ids.empty())
    for (int i = 1; i <= tfp::acceptance::kCriteria; ++i) ids.push_back(i);
  std::ostringstream os;
  int failures = tfp::acceptance::check_cache_coherence(opt, os) ? 0 : 1;
  std::cout << os.str() << std::flush;
  failures += tfp::acceptance::run_suite(ids, opt, std::cout);
  std::cout << (failures ? std::to_string(failures) + " check(s) failed" : std::string("all checks passed")) << '\n';
  return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tfp: trace maps, non-crossing posets, high-order free laws and random tensor experiments"};
  app.require_subcommand(1);

  EnumerateArgs en;
  auto* s_en = app.add_subcommand("enumerate", "rooted classes of connected maps B_n");
  add_common(s_en, en.c, "json");
  s_en->add_option("--p", en.p, "vertex degree")->required()->check(CLI::Range(1, 16));
  s_en->add_option("--n", en.n, "number of vertices")->required()->check(CLI::Range(1, 16));
  s_en->add_option("--cap", en.cap, "largest p*n allowed")->check(CLI::Range(1, 24));

  PosetArgs po;
  auto* s_po = app.add_subcommand("poset", "down-set and Moebius values below a map");
  add_common(s_po, po.c, "json");
  s_po->add_option("--code", po.code, "canonical code, e.g. 3,3:3,4,5,0,1,2");
  s_po->add_option("--p", po.p);
  s_po->add_option("--n", po.n);
  s_po->add_option("--index", po.index, "class index in B_n");

  LawsArgs la;
  auto* s_la = app.add_subcommand("laws", "moment and cumulant tables");
  add_common(s_la, la.c, "csv");
  s_la->add_option("--family", la.family)->check(CLI::IsMember({"semicircular", "free_poisson", "marchenko_pastur", "delta"}));
  s_la->add_option("--p", la.p)->check(CLI::Range(1, 64));
  s_la->add_option("--K", la.K, "truncation order")->check(CLI::Range(0, 200));
  s_la->add_option("--t", la.t, "free Poisson / delta parameter (rational)");
  s_la->add_option("--tau", la.tau, "Marchenko-Pastur ratio (rational)");
  s_la->add_option("--factor", la.factor, "explicit dilation factor");
  s_la->add_option("--source", la.source, "series (recursion) or maps (enumeration)")->check(CLI::IsMember({"series", "maps"}));

  ConvolveArgs co;
  auto* s_co = app.add_subcommand("convolve", "free convolution of two moment files");
  add_common(s_co, co.c, "json");
  s_co->add_option("a", co.a, "moment file")->required();
  s_co->add_option("b", co.b, "moment file")->required();
  s_co->add_option("--p", co.p)->check(CLI::Range(2, 64));

  TransformArgs tr;
  auto* s_tr = app.add_subcommand("transform", "R, Q, Cauchy transforms and the K(G(z)) = z check");
  add_common(s_tr, tr.c, "json");
  s_tr->add_option("--kind", tr.kind)->check(CLI::IsMember({"r", "q", "cauchy", "kg"}));
  s_tr->add_option("--input", tr.input, "moment file");
  s_tr->add_option("--family", tr.family)->check(CLI::IsMember({"semicircular", "free_poisson", "marchenko_pastur", "delta"}));
  s_tr->add_option("--p", tr.p)->check(CLI::Range(1, 64));
  s_tr->add_option("--K", tr.K)->check(CLI::Range(1, 200));
  s_tr->add_option("--t", tr.t);
  s_tr->add_option("--tau", tr.tau);

  SimulateArgs si;
  auto* s_si = app.add_subcommand("simulate", "Monte Carlo ladders for wigner or wishart tensors");
  add_common(s_si, si.c, "csv");
  s_si->add_option("family", si.family, "wigner or wishart")->required()->check(CLI::IsMember({"wigner", "wishart"}));
  s_si->add_option("--p", si.p)->check(CLI::Range(1, 8));
  s_si->add_option("--N", si.Ns, "comma-separated ladder");
  s_si->add_option("--trials", si.trials)->check(CLI::Range(1L, 1000000L));
  s_si->add_option("--seed", si.seed);
  s_si->add_option("--law", si.law)->check(CLI::IsMember({"gaussian", "rademacher"}));
  s_si->add_option("--n-max", si.n_max)->check(CLI::Range(1, 8));
  s_si->add_option("--t", si.t, "wishart ratio");
  s_si->add_option("--k", si.k, "wishart rank (overrides t)");
  s_si->add_option("--p1", si.p1, "odd split");
  s_si->add_option("--scaling", si.scaling)->check(CLI::IsMember({"literal", "moment_matched"}));
  s_si->add_option("--superpose", si.superpose, "CLT superposition of this many draws")->check(CLI::Range(1, 100000));
  s_si->add_option("--map", si.map, "estimate one map (canonical code) instead of moments");
  s_si->add_option("--threads", si.threads)->check(CLI::Range(1, 1024));

  CltArgs cl;
  auto* s_cl = app.add_subcommand("clt", "exact free CLT sweep");
  add_common(s_cl, cl.c, "csv");
  s_cl->add_option("--p", cl.p)->check(CLI::Range(1, 64));
  s_cl->add_option("--K", cl.K)->check(CLI::Range(2, 100));
  s_cl->add_option("--k", cl.ks, "comma-separated superposition sizes");
  s_cl->add_option("--kappa", cl.kappa, "kappa_1..kappa_K, comma-separated rationals");

  SelftestArgs st;
  auto* s_st = app.add_subcommand("selftest", "run the acceptance suite");
  add_common(s_st, st.c, "json");
  s_st->add_option("--criterion", st.criteria, "run only these (repeatable)")->check(CLI::Range(1, tfp::acceptance::kCriteria));
  s_st->add_option("--threads", st.threads, "0: hardware concurrency");
  s_st->add_flag("-q,--quiet", st.quiet);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*s_en) return run_enumerate(en);
    if (*s_po) return run_poset(po);
    if (*s_la) return run_laws(la);
    if (*s_co) return run_convolve(co);
    if (*s_tr) return run_transform(tr);
    if (*s_si) return run_simulate(si);
    if (*s_cl) return run_clt(cl);
    if (*s_st) return run_selftest(st);
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return 1;
  } catch (const std::logic_error& e) {  // invalid values: usage
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
