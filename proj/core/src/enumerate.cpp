#include "tfp/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "tfp/errors.hpp"

namespace tfp {

namespace {

// Orderly generation: take the smallest unmatched label h among discovered
// vertices and pair it either with a larger unmatched label there, or with
// position 0 of a fresh vertex. This is exactly the rule the rooted traversal
// uses to relabel, so each class comes out once, already canonical.
struct Generator {
  int p, n;
  std::vector<int> alpha;
  std::vector<CombMap>* out;

  void run(int k, int from) {
    const int open = k * p;
    int h = from;
    while (h < open && alpha[static_cast<std::size_t>(h)] != -1) ++h;
    if (h == open) {
      if (k == n) out->push_back(CombMap::from_degrees(std::vector<int>(static_cast<std::size_t>(n), p), alpha));
      return;
    }
    for (int l = h + 1; l < open; ++l) {
      if (alpha[static_cast<std::size_t>(l)] != -1) continue;
      alpha[static_cast<std::size_t>(h)] = l;
      alpha[static_cast<std::size_t>(l)] = h;
      run(k, h + 1);
      alpha[static_cast<std::size_t>(h)] = alpha[static_cast<std::size_t>(l)] = -1;
    }
    if (k < n) {
      alpha[static_cast<std::size_t>(h)] = open;
      alpha[static_cast<std::size_t>(open)] = h;
      run(k + 1, h + 1);
      alpha[static_cast<std::size_t>(h)] = alpha[static_cast<std::size_t>(open)] = -1;
    }
  }
};

}  // namespace

std::vector<CombMap> enumerate_bn(int p, int n, int cap) {
  if (p < 1 || n < 1) throw DomainError("enumerate_bn: p and n must be positive");
  if (p * n > cap)
    throw ResourceError("enumerate_bn: p*n = " + std::to_string(p * n) + " exceeds cap " + std::to_string(cap));
  std::vector<CombMap> out;
  if ((p * n) % 2 != 0) return out;
  Generator g{p, n, std::vector<int>(static_cast<std::size_t>(p * n), -1), &out};
  g.run(1, 0);
  std::vector<std::pair<CanonicalCode, std::size_t>> keyed;
  keyed.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) keyed.emplace_back(canonical_code(out[i]), i);
  std::sort(keyed.begin(), keyed.end());
  std::vector<CombMap> sorted;
  sorted.reserve(out.size());
  for (auto& [c, i] : keyed) sorted.push_back(std::move(out[i]));
  return sorted;
}

std::vector<std::vector<int>> rooted_relabelings(int p, int n) {
  if (p < 1 || n < 1) throw DomainError("rooted_relabelings: p and n must be positive");
  std::vector<std::vector<int>> out;
  std::vector<int> perm(static_cast<std::size_t>(n - 1));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<int> rot(static_cast<std::size_t>(n), 0);
  do {
    std::fill(rot.begin(), rot.end(), 0);
    while (true) {
      std::vector<int> image(static_cast<std::size_t>(p * n));
      for (int h = 0; h < p * n; ++h) {
        int v = h / p, j = h % p;
        int nv = v == 0 ? 0 : perm[static_cast<std::size_t>(v - 1)];
        image[static_cast<std::size_t>(h)] = nv * p + (j + rot[static_cast<std::size_t>(v)]) % p;
      }
      out.push_back(std::move(image));
      int v = 1;
      while (v < n && ++rot[static_cast<std::size_t>(v)] == p) rot[static_cast<std::size_t>(v++)] = 0;
      if (v >= n) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

void for_each_rooted_image(const CombMap& rep, const std::function<void(const std::vector<int>&)>& f) {
  const int p = rep.uniform_degree();
  if (p < 1 || !rep.has_block_rotation())
    throw MapError("for_each_rooted_image: needs uniform degree and block rotation");
  std::vector<int> alpha(static_cast<std::size_t>(rep.half_edges()));
  for (const auto& image : rooted_relabelings(p, rep.vertices())) {
    for (int h = 0; h < rep.half_edges(); ++h)
      alpha[static_cast<std::size_t>(image[static_cast<std::size_t>(h)])] =
          image[static_cast<std::size_t>(rep.partner(h))];
    f(alpha);
  }
}

Atlas build_atlas(int p, int n, int cap) {
  Atlas a;
  a.p = p;
  a.n = n;
  for (auto& m : enumerate_bn(p, n, cap)) {
    CanonicalCode c = canonical_code(m);
    a.entries.push_back({std::move(m), std::move(c)});
  }
  return a;
}

}  // namespace tfp
