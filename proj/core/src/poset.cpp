#include "tfp/poset.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>

#include "tfp/errors.hpp"

namespace tfp {

namespace {

std::uint64_t hash_pairing(const std::vector<int>& a) {
  std::uint64_t h = 1469598103934665603ull;
  for (int x : a) {
    h ^= static_cast<std::uint64_t>(x);
    h *= 1099511628211ull;
  }
  return h;
}

bool test_bit(const std::vector<std::uint64_t>& bits, std::size_t j) { return (bits[j / 64] >> (j % 64)) & 1u; }

}  // namespace

int gamma_with_pairing(const CombMap& m, const std::vector<int>& alpha) {
  const int n = m.vertices();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  int comps = n;
  for (int h = 0; h < m.half_edges(); ++h) {
    int x = find(m.vertex_of(h)), y = find(m.vertex_of(alpha[static_cast<std::size_t>(h)]));
    if (x != y) {
      parent[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
      --comps;
    }
  }
  return comps;
}

DownSet::DownSet(const CombMap& top, std::size_t cap) : top_(top) {
  buckets_.assign(1024, {});
  auto insert = [&](std::vector<int> a, int g) -> std::size_t {
    std::uint64_t h = hash_pairing(a);
    auto& bucket = buckets_[h % buckets_.size()];
    for (std::size_t idx : bucket)
      if (hashes_[idx] == h && pairings_[idx] == a) return idx;
    if (pairings_.size() >= cap)
      throw ResourceError("down_set: more than " + std::to_string(cap) + " elements");
    std::size_t idx = pairings_.size();
    bucket.push_back(idx);
    hashes_.push_back(h);
    pairings_.push_back(std::move(a));
    gammas_.push_back(g);
    lower_.emplace_back();
    upper_.emplace_back();
    return idx;
  };
  insert(top.pairing(), top.gamma());
  for (std::size_t i = 0; i < pairings_.size(); ++i) {
    if (pairings_.size() > 4 * buckets_.size()) {
      std::vector<std::vector<std::size_t>> nb(buckets_.size() * 4);
      for (std::size_t k = 0; k < pairings_.size(); ++k) nb[hashes_[k] % nb.size()].push_back(k);
      buckets_ = std::move(nb);
    }
    const std::vector<int> base = pairings_[i];
    const int g = gammas_[i];
    std::vector<Edge> es;
    for (int h = 0; h < static_cast<int>(base.size()); ++h)
      if (h < base[static_cast<std::size_t>(h)]) es.push_back({h, base[static_cast<std::size_t>(h)]});
    for (std::size_t x = 0; x < es.size(); ++x)
      for (std::size_t y = x + 1; y < es.size(); ++y)
        for (SwitchVariant v : {SwitchVariant::A, SwitchVariant::B}) {
          std::vector<int> a = base;
          switch_pairing(a, es[x], es[y], v);
          if (gamma_with_pairing(top_, a) != g + 1) continue;
          std::size_t j = insert(std::move(a), g + 1);
          auto& lc = lower_[i];
          if (std::find(lc.begin(), lc.end(), static_cast<int>(j)) == lc.end()) {
            lc.push_back(static_cast<int>(j));
            upper_[j].push_back(static_cast<int>(i));
          }
        }
  }
}

CombMap DownSet::node(std::size_t i) const { return CombMap::from_pairing(top_.cycles(), pairings_[i]); }

long DownSet::find(const std::vector<int>& alpha) const {
  std::uint64_t h = hash_pairing(alpha);
  for (std::size_t idx : buckets_[h % buckets_.size()])
    if (hashes_[idx] == h && pairings_[idx] == alpha) return static_cast<long>(idx);
  return -1;
}

void DownSet::build_closure() const {
  if (!ancestors_.empty()) return;
  const std::size_t n = size(), words = (n + 63) / 64;
  ancestors_.assign(n, std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < n; ++i) {
    auto& a = ancestors_[i];
    a[i / 64] |= std::uint64_t{1} << (i % 64);
    for (int u : upper_[i]) {
      const auto& au = ancestors_[static_cast<std::size_t>(u)];
      for (std::size_t w = 0; w < words; ++w) a[w] |= au[w];
    }
  }
}

bool DownSet::leq(std::size_t i, std::size_t j) const {
  build_closure();
  return test_bit(ancestors_[i], j);
}

const std::vector<long long>& DownSet::moebius_to_top() const {
  if (!moeb_top_.empty()) return moeb_top_;
  build_closure();
  const std::size_t n = size();
  moeb_top_.assign(n, 0);
  moeb_top_[0] = 1;
  for (std::size_t i = 1; i < n; ++i) {
    long long s = 0;
    for (std::size_t j = 0; j < i; ++j)
      if (test_bit(ancestors_[i], j)) s += moeb_top_[j];
    moeb_top_[i] = -s;
  }
  return moeb_top_;
}

long long DownSet::moebius(std::size_t i, std::size_t j) const {
  if (!leq(i, j)) return 0;
  if (j == 0) return moebius_to_top()[i];
  // Moeb(i, k) for k in [i, j], walking upward (decreasing index).
  std::vector<long long> mu(size(), 0);
  std::vector<std::size_t> interval;
  for (std::size_t k = i + 1; k-- > j;)
    if (test_bit(ancestors_[i], k) && test_bit(ancestors_[k], j)) interval.push_back(k);
  for (std::size_t k : interval) {
    if (k == i) {
      mu[k] = 1;
      continue;
    }
    long long s = 0;
    for (std::size_t l : interval) {
      if (l == k) break;
      if (test_bit(ancestors_[l], k)) s += mu[l];
    }
    mu[k] = -s;
  }
  return mu[j];
}

std::vector<std::size_t> DownSet::minimal() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (lower_[i].empty()) out.push_back(i);
  return out;
}

std::vector<CombMap> down_set(const CombMap& b, std::size_t cap) {
  DownSet d(b, cap);
  std::vector<CombMap> out;
  out.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out.push_back(d.node(i));
  return out;
}

long long moebius(const CombMap& lower, const CombMap& upper) {
  if (lower.cycles() != upper.cycles()) return 0;
  using Key = std::tuple<std::vector<std::vector<int>>, std::vector<int>, std::vector<int>>;
  static std::mutex mu;
  static std::map<Key, long long> memo;
  Key key{upper.cycles(), upper.pairing(), lower.pairing()};
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  DownSet d(upper);
  long idx = d.find(lower.pairing());
  long long v = idx < 0 ? 0 : d.moebius_to_top()[static_cast<std::size_t>(idx)];
  std::lock_guard lock(mu);
  memo.emplace(std::move(key), v);
  return v;
}

std::vector<CombMap> minimal_elements(const CombMap& b) {
  DownSet d(b);
  std::vector<CombMap> out;
  for (std::size_t i : d.minimal()) out.push_back(d.node(i));
  return out;
}

bool is_melonic(const CombMap& b) {
  DownSet d(b);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.gamma(i) * 2 != b.vertices()) continue;
    bool all = true;
    for (const auto& c : d.node(i).components())
      if (!is_melon(c)) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

bool is_melonic_reduction(const CombMap& b) {
  const int p = b.uniform_degree();
  if (p < 1) throw MapError("is_melonic_reduction: uniform degree required");
  std::vector<int> alpha = b.pairing();
  std::vector<char> alive(static_cast<std::size_t>(b.vertices()), 1);
  int remaining = b.vertices();
  auto vtx = [&](int h) { return b.vertex_of(h); };
  while (remaining > 0) {
    bool reduced = false;
    for (int u = 0; u < b.vertices() && !reduced; ++u) {
      if (!alive[static_cast<std::size_t>(u)]) continue;
      std::map<int, int> links;
      for (int h : b.cycles()[static_cast<std::size_t>(u)]) {
        int w = vtx(alpha[static_cast<std::size_t>(h)]);
        if (w != u) ++links[w];
      }
      for (auto [w, cnt] : links) {
        if (cnt < p - 1) continue;
        if (cnt < p) {
          // the two leftover half-edges get joined through
          int x = -1, y = -1;
          for (int h : b.cycles()[static_cast<std::size_t>(u)])
            if (vtx(alpha[static_cast<std::size_t>(h)]) != w) x = h;
          for (int h : b.cycles()[static_cast<std::size_t>(w)])
            if (vtx(alpha[static_cast<std::size_t>(h)]) != u) y = h;
          if (x < 0 || y < 0) continue;
          int xo = alpha[static_cast<std::size_t>(x)], yo = alpha[static_cast<std::size_t>(y)];
          if (vtx(xo) == u || vtx(yo) == w) continue;  // leftover is a loop
          alpha[static_cast<std::size_t>(xo)] = yo;
          alpha[static_cast<std::size_t>(yo)] = xo;
        }
        alive[static_cast<std::size_t>(u)] = alive[static_cast<std::size_t>(w)] = 0;
        remaining -= 2;
        reduced = true;
        break;
      }
    }
    if (!reduced) return false;
  }
  return true;
}

}  // namespace tfp
