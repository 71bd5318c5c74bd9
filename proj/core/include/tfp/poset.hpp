#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tfp/comb_map.hpp"

namespace tfp {

inline constexpr std::size_t kDefaultDownSetCap = 1u << 16;

// The set { b' <= b } with its cover relation. Every element shares b's vertex
// cycles and differs only in the pairing. Node 0 is b itself; nodes are in
// breadth-first order, so gamma is non-decreasing along the index.
class DownSet {
 public:
  explicit DownSet(const CombMap& top, std::size_t cap = kDefaultDownSetCap);

  std::size_t size() const { return pairings_.size(); }
  const CombMap& top() const { return top_; }
  const std::vector<int>& pairing(std::size_t i) const { return pairings_[i]; }
  int gamma(std::size_t i) const { return gammas_[i]; }
  CombMap node(std::size_t i) const;
  // Index of the element with this pairing, or -1.
  long find(const std::vector<int>& alpha) const;

  // i covered by j: j in upper_covers(i).
  const std::vector<int>& lower_covers(std::size_t i) const { return lower_[i]; }
  const std::vector<int>& upper_covers(std::size_t i) const { return upper_[i]; }

  // Order relation inside the down-set: i <= j.
  bool leq(std::size_t i, std::size_t j) const;

  // Moeb(node i, top) for every node i.
  const std::vector<long long>& moebius_to_top() const;
  // Moeb(node i, node j); 0 unless i <= j.
  long long moebius(std::size_t i, std::size_t j) const;

  std::vector<std::size_t> minimal() const;

 private:
  void build_closure() const;

  CombMap top_;
  std::vector<std::vector<int>> pairings_;
  std::vector<int> gammas_;
  std::vector<std::vector<int>> lower_, upper_;
  std::vector<std::uint64_t> hashes_;
  std::vector<std::vector<std::size_t>> buckets_;
  // ancestors_[i] bit j set iff i <= j
  mutable std::vector<std::vector<std::uint64_t>> ancestors_;
  mutable std::vector<long long> moeb_top_;
};

// gamma of (cycles of m, alpha); union-find over m's vertices.
int gamma_with_pairing(const CombMap& m, const std::vector<int>& alpha);

std::vector<CombMap> down_set(const CombMap& b, std::size_t cap = kDefaultDownSetCap);
// Moeb(lower, upper); zero if lower is not below upper.
long long moebius(const CombMap& lower, const CombMap& upper);
std::vector<CombMap> minimal_elements(const CombMap& b);

// b is above some disjoint union of melons.
bool is_melonic(const CombMap& b);
// Same answer by repeatedly removing two vertices joined by >= p-1 edges.
// Uniform degree only.
bool is_melonic_reduction(const CombMap& b);

}  // namespace tfp
