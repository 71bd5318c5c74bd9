#pragma once

#include <compare>
#include <utility>
#include <vector>

#include "tfp/permutation.hpp"

namespace tfp {

struct Edge {
  int a;  // a < b
  int b;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// A trace map: vertex rotation pi (given by its cycles) and a fixed-point-free
// involution alpha pairing the half-edges. Cycles are stored starting at their
// minimum and sorted by that minimum, so vertex 0 holds half-edge 0.
class CombMap {
 public:
  CombMap() = default;

  static CombMap build(std::vector<std::vector<int>> vertex_cycles,
                       const std::vector<std::pair<int, int>>& pairs);
  static CombMap from_pairing(std::vector<std::vector<int>> vertex_cycles, std::vector<int> alpha);
  // Vertex v = (offset_v, ..., offset_v + deg_v - 1).
  static CombMap from_degrees(const std::vector<int>& degrees, std::vector<int> alpha);

  int half_edges() const { return static_cast<int>(alpha_.size()); }
  int vertices() const { return static_cast<int>(cycles_.size()); }
  int edges_count() const { return half_edges() / 2; }
  int gamma() const { return gamma_; }
  bool connected() const { return gamma_ <= 1; }

  const std::vector<std::vector<int>>& cycles() const { return cycles_; }
  const std::vector<int>& pairing() const { return alpha_; }
  int partner(int h) const { return alpha_[static_cast<std::size_t>(h)]; }
  int vertex_of(int h) const { return vertex_of_[static_cast<std::size_t>(h)]; }
  int position_of(int h) const { return position_of_[static_cast<std::size_t>(h)]; }
  int degree(int v) const { return static_cast<int>(cycles_[static_cast<std::size_t>(v)].size()); }
  // Half-edge at position j of vertex v (j taken mod degree).
  int at(int v, int j) const;
  // Degree if every vertex has the same one, else -1.
  int uniform_degree() const;
  // True when every cycle is a block of consecutive labels in vertex order.
  bool has_block_rotation() const;

  Permutation pi() const;
  Permutation alpha() const { return Permutation(alpha_); }
  std::vector<Edge> edges() const;

  // Component index per vertex, numbered by smallest half-edge.
  const std::vector<int>& vertex_component() const { return component_; }
  // Each component relabeled to 0..m'-1 keeping the relative order of labels.
  std::vector<CombMap> components() const;

  friend bool operator==(const CombMap& x, const CombMap& y) {
    return x.alpha_ == y.alpha_ && x.cycles_ == y.cycles_;
  }

 private:
  void finish();

  std::vector<std::vector<int>> cycles_;
  std::vector<int> alpha_;
  std::vector<int> vertex_of_;
  std::vector<int> position_of_;
  std::vector<int> component_;
  int gamma_ = 0;
};

enum class SwitchVariant { A, B };

// {a,b},{c,d} -> A: {a,c},{b,d}; B: {a,d},{b,c}.
CombMap switch_edges(const CombMap& m, Edge e1, Edge e2, SwitchVariant v);
// Same rewiring on a bare pairing, no validation.
void switch_pairing(std::vector<int>& alpha, Edge e1, Edge e2, SwitchVariant v);

// Two vertices of degree p joined by p edges: position i of the first to
// position sigma(i) of the second.
CombMap melon(int p, const Permutation& sigma);
// One vertex of even degree p with pairs (sigma(0), sigma(1)), (sigma(2), sigma(3)), ...
CombMap bouquet(int p, const Permutation& sigma);
// n vertices of even degree p; first p/2 positions are "in", the rest "out";
// out position p/2 + r of vertex v meets in position sigmas[v](r) of vertex v+1 (mod n).
CombMap multicycle(int p, int n, const std::vector<Permutation>& sigmas);
CombMap multicycle(int p, int n);
// Odd p: 2n vertices on a cycle, alternately (p+1)/2 and (p-1)/2 parallel edges.
CombMap odd_multicycle(int p, int n);

// Melon test on a single component: two vertices of equal degree, all edges between them.
bool is_melon(const CombMap& component);

}  // namespace tfp
