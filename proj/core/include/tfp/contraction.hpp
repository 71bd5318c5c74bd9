#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "tfp/comb_map.hpp"
#include "tfp/dense_tensor.hpp"

namespace tfp {

struct ContractionStep {
  enum class Kind { trace, merge };
  Kind kind = Kind::merge;
  int a = -1;  // operand node ids; vertices are nodes 0..n-1
  int b = -1;  // -1 for trace
  int result = -1;
  std::vector<int> result_legs;  // edge ids, in storage order
  std::size_t result_entries = 0;
  double flops = 0;
};

// Pairwise contraction order for one map at one dimension. Self-loops are
// traced first; then, per component, the pair of nodes sharing a leg whose
// merge gives the smallest tensor is contracted (ties: lowest vertex ids).
struct ContractionPlan {
  int N = 0;
  int gamma = 0;
  std::vector<int> vertex_degree;
  std::vector<std::vector<int>> vertex_legs;  // edge id per position
  std::vector<ContractionStep> steps;
  std::vector<int> scalars;  // final node of each component
  std::size_t peak_entries = 0;
  double flops = 0;
};

ContractionPlan plan_contraction(const CombMap& m, int N);

// Entries of every executed intermediate, step by step.
struct ExecutionTrace {
  std::vector<std::size_t> step_entries;
};

// N^-gamma times the full contraction; one tensor per vertex.
double execute_plan(const ContractionPlan& plan, const std::vector<const DenseTensor*>& tensors,
                    ExecutionTrace* trace = nullptr);

double eval_trace_invariant(const CombMap& m, const std::vector<const DenseTensor*>& tensors);
double eval_trace_invariant(const CombMap& m, const DenseTensor& T);
// Nested loop over all edge index assignments (oracle; small N only).
double eval_naive(const CombMap& m, const std::vector<const DenseTensor*>& tensors);

// Thread-safe memo of plans keyed by (labeled map, N).
class PlanCache {
 public:
  const ContractionPlan& get(const CombMap& m, int N);

 private:
  using Key = std::tuple<std::vector<std::vector<int>>, std::vector<int>, int>;
  std::mutex mu_;
  std::map<Key, std::unique_ptr<ContractionPlan>> plans_;
};

}  // namespace tfp
