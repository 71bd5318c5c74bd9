#include "tfp/comb_map.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "tfp/errors.hpp"

namespace tfp {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

}  // namespace

CombMap CombMap::build(std::vector<std::vector<int>> vertex_cycles,
                       const std::vector<std::pair<int, int>>& pairs) {
  int m = 0;
  for (const auto& c : vertex_cycles) m += static_cast<int>(c.size());
  if (static_cast<int>(pairs.size()) * 2 != m)
    throw MapError("pairing must cover all " + std::to_string(m) + " half-edges");
  std::vector<int> alpha(static_cast<std::size_t>(m), -1);
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= m || b >= m) throw MapError("half-edge label out of range");
    if (a == b) throw MapError("half-edge paired with itself");
    if (alpha[static_cast<std::size_t>(a)] != -1 || alpha[static_cast<std::size_t>(b)] != -1)
      throw MapError("half-edge paired twice");
    alpha[static_cast<std::size_t>(a)] = b;
    alpha[static_cast<std::size_t>(b)] = a;
  }
  return from_pairing(std::move(vertex_cycles), std::move(alpha));
}

CombMap CombMap::from_pairing(std::vector<std::vector<int>> vertex_cycles, std::vector<int> alpha) {
  const int m = static_cast<int>(alpha.size());
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  int total = 0;
  for (auto& c : vertex_cycles) {
    if (c.empty()) throw MapError("empty vertex cycle");
    for (int h : c) {
      if (h < 0 || h >= m) throw MapError("half-edge label out of range");
      if (seen[static_cast<std::size_t>(h)]) throw MapError("half-edge in two vertex cycles");
      seen[static_cast<std::size_t>(h)] = 1;
    }
    total += static_cast<int>(c.size());
    std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
  }
  if (total != m) throw MapError("vertex cycles do not cover the pairing");
  for (int h = 0; h < m; ++h) {
    int a = alpha[static_cast<std::size_t>(h)];
    if (a < 0 || a >= m || a == h || alpha[static_cast<std::size_t>(a)] != h)
      throw MapError("pairing is not a fixed-point-free involution");
  }
  std::sort(vertex_cycles.begin(), vertex_cycles.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  CombMap out;
  out.cycles_ = std::move(vertex_cycles);
  out.alpha_ = std::move(alpha);
  out.finish();
  return out;
}

CombMap CombMap::from_degrees(const std::vector<int>& degrees, std::vector<int> alpha) {
  std::vector<std::vector<int>> cycles;
  int next = 0;
  for (int d : degrees) {
    if (d <= 0) throw MapError("vertex degree must be positive");
    std::vector<int> c(static_cast<std::size_t>(d));
    std::iota(c.begin(), c.end(), next);
    next += d;
    cycles.push_back(std::move(c));
  }
  return from_pairing(std::move(cycles), std::move(alpha));
}

void CombMap::finish() {
  const auto m = alpha_.size();
  vertex_of_.assign(m, 0);
  position_of_.assign(m, 0);
  for (std::size_t v = 0; v < cycles_.size(); ++v)
    for (std::size_t j = 0; j < cycles_[v].size(); ++j) {
      vertex_of_[static_cast<std::size_t>(cycles_[v][j])] = static_cast<int>(v);
      position_of_[static_cast<std::size_t>(cycles_[v][j])] = static_cast<int>(j);
    }
  std::vector<int> parent(cycles_.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t h = 0; h < m; ++h) {
    int x = find_root(parent, vertex_of_[h]);
    int y = find_root(parent, vertex_of_[static_cast<std::size_t>(alpha_[h])]);
    if (x != y) parent[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
  }
  component_.assign(cycles_.size(), -1);
  std::vector<int> root_id(cycles_.size(), -1);
  gamma_ = 0;
  // vertices are sorted by minimum label, so roots come out in label order
  for (std::size_t v = 0; v < cycles_.size(); ++v) {
    int r = find_root(parent, static_cast<int>(v));
    if (root_id[static_cast<std::size_t>(r)] == -1) root_id[static_cast<std::size_t>(r)] = gamma_++;
    component_[v] = root_id[static_cast<std::size_t>(r)];
  }
}

int CombMap::at(int v, int j) const {
  const auto& c = cycles_[static_cast<std::size_t>(v)];
  int d = static_cast<int>(c.size());
  return c[static_cast<std::size_t>(((j % d) + d) % d)];
}

int CombMap::uniform_degree() const {
  if (cycles_.empty()) return -1;
  int d = degree(0);
  for (int v = 1; v < vertices(); ++v)
    if (degree(v) != d) return -1;
  return d;
}

bool CombMap::has_block_rotation() const {
  int next = 0;
  for (const auto& c : cycles_)
    for (int h : c)
      if (h != next++) return false;
  return true;
}

Permutation CombMap::pi() const { return Permutation::from_cycles(half_edges(), cycles_); }

std::vector<Edge> CombMap::edges() const {
  std::vector<Edge> out;
  for (int h = 0; h < half_edges(); ++h)
    if (h < partner(h)) out.push_back({h, partner(h)});
  return out;
}

std::vector<CombMap> CombMap::components() const {
  std::vector<std::vector<int>> labels(static_cast<std::size_t>(gamma_));
  for (int h = 0; h < half_edges(); ++h)
    labels[static_cast<std::size_t>(component_[static_cast<std::size_t>(vertex_of(h))])].push_back(h);
  std::vector<int> relabel(alpha_.size());
  for (const auto& ls : labels)
    for (std::size_t i = 0; i < ls.size(); ++i) relabel[static_cast<std::size_t>(ls[i])] = static_cast<int>(i);
  std::vector<std::vector<std::vector<int>>> cyc(static_cast<std::size_t>(gamma_));
  for (std::size_t v = 0; v < cycles_.size(); ++v) {
    std::vector<int> c;
    for (int h : cycles_[v]) c.push_back(relabel[static_cast<std::size_t>(h)]);
    cyc[static_cast<std::size_t>(component_[v])].push_back(std::move(c));
  }
  std::vector<CombMap> out;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    std::vector<int> a(labels[k].size());
    for (int h : labels[k])
      a[static_cast<std::size_t>(relabel[static_cast<std::size_t>(h)])] = relabel[static_cast<std::size_t>(partner(h))];
    out.push_back(from_pairing(std::move(cyc[k]), std::move(a)));
  }
  return out;
}

void switch_pairing(std::vector<int>& alpha, Edge e1, Edge e2, SwitchVariant v) {
  auto link = [&](int x, int y) {
    alpha[static_cast<std::size_t>(x)] = y;
    alpha[static_cast<std::size_t>(y)] = x;
  };
  if (v == SwitchVariant::A) {
    link(e1.a, e2.a);
    link(e1.b, e2.b);
  } else {
    link(e1.a, e2.b);
    link(e1.b, e2.a);
  }
}

CombMap switch_edges(const CombMap& m, Edge e1, Edge e2, SwitchVariant v) {
  auto check = [&](Edge& e) {
    if (e.a > e.b) std::swap(e.a, e.b);
    if (e.a < 0 || e.b >= m.half_edges() || m.partner(e.a) != e.b)
      throw MapError("switch: not an edge of the map");
  };
  check(e1);
  check(e2);
  if (e1 == e2) throw MapError("switch: edges must be distinct");
  std::vector<int> alpha = m.pairing();
  switch_pairing(alpha, e1, e2, v);
  return CombMap::from_pairing(m.cycles(), std::move(alpha));
}

CombMap melon(int p, const Permutation& sigma) {
  if (p < 1 || sigma.size() != p) throw MapError("melon: sigma must be a permutation of size p");
  std::vector<int> alpha(static_cast<std::size_t>(2 * p));
  for (int i = 0; i < p; ++i) {
    alpha[static_cast<std::size_t>(i)] = p + sigma(i);
    alpha[static_cast<std::size_t>(p + sigma(i))] = i;
  }
  return CombMap::from_degrees({p, p}, std::move(alpha));
}

CombMap bouquet(int p, const Permutation& sigma) {
  if (p < 2 || p % 2 != 0) throw MapError("bouquet: degree must be even");
  if (sigma.size() != p) throw MapError("bouquet: sigma must be a permutation of size p");
  std::vector<int> alpha(static_cast<std::size_t>(p));
  for (int i = 0; i < p; i += 2) {
    alpha[static_cast<std::size_t>(sigma(i))] = sigma(i + 1);
    alpha[static_cast<std::size_t>(sigma(i + 1))] = sigma(i);
  }
  return CombMap::from_degrees({p}, std::move(alpha));
}

CombMap multicycle(int p, int n, const std::vector<Permutation>& sigmas) {
  if (p < 2 || p % 2 != 0) throw MapError("multicycle: degree must be even");
  if (n < 1) throw MapError("multicycle: need at least one vertex");
  if (static_cast<int>(sigmas.size()) != n) throw MapError("multicycle: one sigma per vertex");
  const int q = p / 2;
  std::vector<int> alpha(static_cast<std::size_t>(p * n));
  for (int v = 0; v < n; ++v) {
    if (sigmas[static_cast<std::size_t>(v)].size() != q) throw MapError("multicycle: sigma must have size p/2");
    int w = (v + 1) % n;
    for (int r = 0; r < q; ++r) {
      int out = v * p + q + r;
      int in = w * p + sigmas[static_cast<std::size_t>(v)](r);
      alpha[static_cast<std::size_t>(out)] = in;
      alpha[static_cast<std::size_t>(in)] = out;
    }
  }
  return CombMap::from_degrees(std::vector<int>(static_cast<std::size_t>(n), p), std::move(alpha));
}

CombMap multicycle(int p, int n) {
  return multicycle(p, n, std::vector<Permutation>(static_cast<std::size_t>(n), Permutation::identity(p / 2)));
}

CombMap odd_multicycle(int p, int n) {
  if (p < 3 || p % 2 == 0) throw MapError("odd_multicycle: degree must be odd and >= 3");
  if (n < 1) throw MapError("odd_multicycle: n must be positive");
  const int verts = 2 * n;
  auto fwd = [&](int j) { return j % 2 == 0 ? (p + 1) / 2 : (p - 1) / 2; };
  std::vector<int> alpha(static_cast<std::size_t>(p * verts));
  for (int j = 0; j < verts; ++j) {
    int k = (j + 1) % verts;
    int back_j = p - fwd(j);
    for (int r = 0; r < fwd(j); ++r) {
      int a = j * p + back_j + r;
      int b = k * p + r;
      alpha[static_cast<std::size_t>(a)] = b;
      alpha[static_cast<std::size_t>(b)] = a;
    }
  }
  return CombMap::from_degrees(std::vector<int>(static_cast<std::size_t>(verts), p), std::move(alpha));
}

bool is_melon(const CombMap& c) {
  if (c.vertices() != 2 || c.degree(0) != c.degree(1)) return false;
  for (int h : c.cycles()[0])
    if (c.vertex_of(c.partner(h)) != 1) return false;
  return true;
}

}  // namespace tfp
