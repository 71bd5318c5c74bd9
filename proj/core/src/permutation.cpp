#include "tfp/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "tfp/errors.hpp"

namespace tfp {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = size();
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      throw MapError("not a permutation of 0.." + std::to_string(n - 1));
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), 0);
  return Permutation(std::move(id));
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> img(static_cast<std::size_t>(n), -1);
  for (const auto& c : cycles) {
    if (c.empty()) throw MapError("empty cycle");
    for (std::size_t i = 0; i < c.size(); ++i) {
      int a = c[i], b = c[(i + 1) % c.size()];
      if (a < 0 || a >= n || b < 0 || b >= n) throw MapError("cycle entry out of range");
      if (img[static_cast<std::size_t>(a)] != -1) throw MapError("point repeated in cycles");
      img[static_cast<std::size_t>(a)] = b;
    }
  }
  for (int i = 0; i < n; ++i)
    if (img[static_cast<std::size_t>(i)] == -1) img[static_cast<std::size_t>(i)] = i;
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::after(const Permutation& first) const {
  if (first.size() != size()) throw MapError("size mismatch in composition");
  std::vector<int> out(images_.size());
  for (int i = 0; i < size(); ++i) out[static_cast<std::size_t>(i)] = (*this)(first(i));
  return Permutation(std::move(out));
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(images_.size(), 0);
  for (int i = 0; i < size(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    std::vector<int> c;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = (*this)(j)) {
      seen[static_cast<std::size_t>(j)] = 1;
      c.push_back(j);
    }
    out.push_back(std::move(c));
  }
  return out;
}

int Permutation::cycle_count() const { return static_cast<int>(cycles().size()); }

bool Permutation::is_involution() const {
  for (int i = 0; i < size(); ++i)
    if ((*this)((*this)(i)) != i) return false;
  return true;
}

bool Permutation::is_fixed_point_free() const {
  for (int i = 0; i < size(); ++i)
    if ((*this)(i) == i) return false;
  return true;
}

std::vector<Permutation> all_permutations(int n) {
  if (n < 0 || n > 10) throw ResourceError("all_permutations: n out of range");
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  std::vector<Permutation> out;
  do out.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

}  // namespace tfp
