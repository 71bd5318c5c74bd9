#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "tfp/permutation.hpp"

namespace tfp {

// Order-p tensor with all legs of dimension N, row-major (first leg slowest).
class DenseTensor {
 public:
  DenseTensor() = default;
  DenseTensor(int p, int N);  // zero-filled
  DenseTensor(int p, int N, std::vector<double> data, bool symmetric = false);

  int order() const { return p_; }
  int dim() const { return N_; }
  std::size_t size() const { return data_.size(); }
  bool symmetric() const { return symmetric_; }
  void set_symmetric(bool s) { symmetric_ = s; }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double at(std::span<const int> idx) const;
  std::size_t offset(std::span<const int> idx) const;
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  // Exact (tol = 0) or relative-tolerance invariance under adjacent leg swaps.
  bool is_symmetric(double tol = 0.0) const;

  DenseTensor& operator*=(double s);
  DenseTensor& operator+=(const DenseTensor& o);

 private:
  int p_ = 0;
  int N_ = 0;
  std::vector<double> data_;
  bool symmetric_ = false;
};

// N^p with overflow and cap checks.
std::size_t tensor_entries(int p, int N);

// T^sigma_{i_1..i_p} = T_{i_sigma(1)..i_sigma(p)}.
DenseTensor permute_legs(const DenseTensor& T, const Permutation& sigma);
// Average over all leg permutations.
DenseTensor symmetrize(const DenseTensor& T);
DenseTensor outer(const DenseTensor& a, const DenseTensor& b);
// Average over all placements of the p1 + p2 legs of T1 (x) T2.
DenseTensor symmetrize_pair(const DenseTensor& T1, const DenseTensor& T2);
// Each leg contracted with U: (T.U^p)_j = sum_i T_i prod_k U_{j_k i_k}.
DenseTensor conjugate_orthogonal(const DenseTensor& T, const std::vector<double>& U_rowmajor);

// Single-line JSON header {"p":..,"N":..,"symmetric":..} then '\n', then N^p
// little-endian float64 values.
void dump_tensor(std::ostream& os, const DenseTensor& T);
DenseTensor load_tensor(std::istream& is);

}  // namespace tfp
