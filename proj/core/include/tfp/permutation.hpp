#pragma once

#include <compare>
#include <cstddef>
#include <vector>

namespace tfp {

// Bijection of {0, ..., n-1}. Labels are 0-based throughout the library;
// text formats shift them to 1-based on the way in and out.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  // Cycles need not cover every point; missing points are fixed.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  // (*this)(after(i)).
  Permutation after(const Permutation& first) const;

  // Each cycle starts at its minimum; cycles ordered by minimum.
  std::vector<std::vector<int>> cycles() const;
  int cycle_count() const;

  bool is_involution() const;
  bool is_fixed_point_free() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

// All permutations of {0..n-1} in lexicographic order. n <= 10.
std::vector<Permutation> all_permutations(int n);

}  // namespace tfp
