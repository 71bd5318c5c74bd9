#include "tfp/distribution.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "tfp/errors.hpp"
#include "tfp/poset.hpp"

namespace tfp {

struct MapDistribution::Memo {
  std::mutex mu;
  std::map<std::pair<std::vector<std::vector<int>>, std::vector<int>>, QPoly> values;
};

MapDistribution::MapDistribution(std::string name, int p, Representation rep, Rule kappa, bool rotation_invariant)
    : name_(std::move(name)), p_(p), rep_(rep), rule_(std::move(kappa)), invariant_(rotation_invariant),
      memo_(std::make_shared<Memo>()) {
  if (p < 1) throw DomainError("distribution order must be positive");
}

QPoly MapDistribution::kappa(const CombMap& c) const {
  auto key = std::make_pair(c.cycles(), c.pairing());
  {
    std::lock_guard lock(memo_->mu);
    if (auto it = memo_->values.find(key); it != memo_->values.end()) return it->second;
  }
  QPoly v = rule_(c);
  std::lock_guard lock(memo_->mu);
  memo_->values.emplace(std::move(key), v);
  return v;
}

bool is_multicycle(const CombMap& c) {
  const int P = c.uniform_degree();
  if (P < 2 || P % 2 != 0 || !c.connected()) return false;
  const int q = P / 2, n = c.vertices();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  int v = c.vertex_of(0), start = 0;
  seen[static_cast<std::size_t>(v)] = 1;
  for (int step = 1; step <= n; ++step) {
    int w = -1;
    std::vector<char> hit(static_cast<std::size_t>(P), 0);
    for (int r = 0; r < q; ++r) {
      int a = c.partner(c.at(v, start + q + r));
      if (w == -1) w = c.vertex_of(a);
      if (c.vertex_of(a) != w) return false;
      hit[static_cast<std::size_t>(c.position_of(a))] = 1;
    }
    int s = -1;
    for (int cand = 0; cand < P && s < 0; ++cand) {
      bool ok = true;
      for (int r = 0; r < q && ok; ++r) ok = hit[static_cast<std::size_t>((cand + r) % P)];
      if (ok) s = cand;
    }
    if (s < 0) return false;
    if (w == c.vertex_of(0)) return step == n && s == 0;
    if (seen[static_cast<std::size_t>(w)]) return false;
    seen[static_cast<std::size_t>(w)] = 1;
    v = w;
    start = s;
  }
  return false;
}

MapDistribution semicircular_map(int p) {
  const Rational w = Rational(1) / Rational(factorial(p - 1));
  auto rule = [p, w](const CombMap& c) -> QPoly {
    return c.uniform_degree() == p && is_melon(c) ? QPoly(w) : QPoly();
  };
  return MapDistribution("semicircular", p, p % 2 ? Representation::moment_rule : Representation::cumulant_rule,
                         rule, true);
}

MapDistribution free_poisson_map(int p) {
  if (p < 2 || p % 2 != 0) throw UnsupportedError("free_poisson_map: order must be even");
  const Integer qf = factorial(p / 2);
  auto rule = [p, qf](const CombMap& c) -> QPoly {
    if (c.uniform_degree() != p || !is_multicycle(c)) return {};
    Integer den = 1;
    for (int i = 0; i < c.vertices(); ++i) den *= qf;
    return QPoly::monomial(Rational(1) / Rational(den), 1);
  };
  return MapDistribution("free_poisson", p, Representation::cumulant_rule, rule, p == 2);
}

MapDistribution identity_map(int p) {
  if (p < 2 || p % 2 != 0) throw UnsupportedError("identity_map: degree must be even");
  Integer dfact = 1;
  for (int k = p - 1; k > 1; k -= 2) dfact *= k;
  const Rational w = Rational(1) / Rational(dfact);
  auto rule = [p, w](const CombMap& c) -> QPoly {
    return c.vertices() == 1 && c.degree(0) == p ? QPoly::monomial(w, 1) : QPoly();
  };
  return MapDistribution("identity", p, Representation::cumulant_rule, rule, true);
}

MapDistribution delta0_map(int p) {
  return MapDistribution("delta0", p, Representation::cumulant_rule, [](const CombMap&) { return QPoly(); }, true);
}

MapDistribution free_sum(const MapDistribution& a, const MapDistribution& b) {
  if (a.order() != b.order()) throw DomainError("free_sum: orders differ");
  auto rule = [a, b](const CombMap& c) { return a.kappa(c) + b.kappa(c); };
  auto rep = a.representation() == Representation::cumulant_rule && b.representation() == Representation::cumulant_rule
                 ? Representation::cumulant_rule
                 : Representation::moment_rule;
  return MapDistribution(a.name() + "+" + b.name(), a.order(), rep, rule,
                         a.rotation_invariant() && b.rotation_invariant());
}

MapDistribution as_moment_rule(const MapDistribution& d) {
  return MapDistribution(d.name(), d.order(), Representation::moment_rule, d.rule(), d.rotation_invariant());
}

namespace {

QPoly product_over_components(const MapDistribution& d, const CombMap& m) {
  QPoly r(1);
  for (const auto& c : m.components()) {
    QPoly k = d.kappa(c);
    if (k.is_zero()) return {};
    r *= k;
  }
  return r;
}

QPoly eval_on(const MapDistribution& d, const DownSet& ds) {
  QPoly s;
  for (std::size_t i = 0; i < ds.size(); ++i) s += product_over_components(d, ds.node(i));
  return s;
}

std::vector<int> relabel(const std::vector<int>& alpha, const std::vector<int>& image) {
  std::vector<int> out(alpha.size());
  for (std::size_t h = 0; h < alpha.size(); ++h)
    out[static_cast<std::size_t>(image[h])] = image[static_cast<std::size_t>(alpha[h])];
  return out;
}

void check_rep(const MapDistribution& d, const CombMap& rep) {
  if (rep.uniform_degree() != d.order() || !rep.has_block_rotation())
    throw MapError("class representative must be in canonical form with degree " + std::to_string(d.order()));
}

}  // namespace

QPoly eval(const MapDistribution& d, const CombMap& b) {
  if (b.half_edges() == 0) return QPoly(1);
  return eval_on(d, DownSet(b));
}

QPoly cumulant_of_map(const MapDistribution& d, const CombMap& b) {
  if (d.representation() == Representation::cumulant_rule) return product_over_components(d, b);
  if (d.order() % 2 != 0)
    throw UnsupportedError("cumulant_of_map: Moebius inversion is not defined at odd degree");
  DownSet ds(b);
  const auto& mu = ds.moebius_to_top();
  QPoly s;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (mu[i] == 0) continue;
    s += QPoly(Rational(static_cast<long>(mu[i]))) * eval(d, ds.node(i));
  }
  return s;
}

QPoly class_value(const MapDistribution& d, const CombMap& rep) {
  check_rep(d, rep);
  if (d.rotation_invariant()) return eval(d, rep);
  DownSet ds(rep);
  const auto images = rooted_relabelings(d.order(), rep.vertices());
  QPoly s;
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (const auto& img : images)
      s += product_over_components(d, CombMap::from_pairing(rep.cycles(), relabel(ds.pairing(i), img)));
  return s / QPoly(Rational(static_cast<long>(images.size())));
}

QPoly class_cumulant(const MapDistribution& d, const CombMap& rep) {
  check_rep(d, rep);
  if (d.rotation_invariant()) return cumulant_of_map(d, rep);
  const auto images = rooted_relabelings(d.order(), rep.vertices());
  QPoly s;
  for (const auto& img : images)
    s += cumulant_of_map(d, CombMap::from_pairing(rep.cycles(), relabel(rep.pairing(), img)));
  return s / QPoly(Rational(static_cast<long>(images.size())));
}

QPoly moment_n(const MapDistribution& d, const Atlas& atlas) {
  if (atlas.p != d.order()) throw DomainError("moment_n: atlas degree differs from distribution order");
  QPoly s;
  for (const auto& e : atlas.entries) s += class_value(d, e.map);
  return s;
}

QPoly cumulant_n(const MapDistribution& d, const Atlas& atlas) {
  if (atlas.p != d.order()) throw DomainError("cumulant_n: atlas degree differs from distribution order");
  QPoly s;
  for (const auto& e : atlas.entries) s += class_cumulant(d, e.map);
  return s;
}

std::size_t count_melonic_classes(const Atlas& atlas) {
  std::size_t c = 0;
  for (const auto& e : atlas.entries) c += is_melonic(e.map) ? 1 : 0;
  return c;
}

std::vector<MapMomentRow> map_moment_table(const MapDistribution& d, int n_max,
                                           const std::filesystem::path& cache_dir, int cap) {
  std::vector<MapMomentRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    Atlas a = load_or_build_atlas(d.order(), n, cache_dir, cap);
    MapMomentRow r{n, moment_n(d, a), {}};
    if (d.representation() == Representation::cumulant_rule || d.order() % 2 == 0) r.cumulant = cumulant_n(d, a);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string map_moment_csv(const std::vector<MapMomentRow>& rows, const Rational& t) {
  std::ostringstream os;
  os << "n,m_n,kappa_n\n";
  for (const auto& r : rows) os << r.n << ',' << to_string(r.moment.eval(t)) << ',' << (r.cumulant ? to_string(r.cumulant->eval(t)) : std::string()) << '\n';
  return os.str();
}

}  // namespace tfp
