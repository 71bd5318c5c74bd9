#include <algorithm>

#include "tfp/errors.hpp"
#include "tfp/fuss.hpp"

namespace tfp {

namespace {

// Left-to-right scan with a stack of blocks that may still grow. A point either
// opens a block or joins a stacked block; joining closes everything above it.
struct NcWalker {
  int len;
  int step;
  const std::function<void(const Partition&)>* f;
  std::vector<std::vector<int>> blocks;
  std::vector<int> stack;  // indices into blocks

  bool complete(int b) const { return blocks[static_cast<std::size_t>(b)].size() % static_cast<std::size_t>(step) == 0; }

  void go(int i) {
    if (i == len) {
      for (int b : stack)
        if (!complete(b)) return;
      Partition out = blocks;
      (*f)(out);
      return;
    }
    // open a new block
    blocks.push_back({i});
    stack.push_back(static_cast<int>(blocks.size()) - 1);
    go(i + 1);
    stack.pop_back();
    blocks.pop_back();
    // join the block at depth d, closing the d blocks above it
    for (std::size_t d = 0; d < stack.size(); ++d) {
      std::size_t top = stack.size() - 1 - d;
      bool ok = true;
      for (std::size_t k = top + 1; k < stack.size() && ok; ++k) ok = complete(stack[k]);
      if (!ok) break;  // deeper joins would close the same incomplete block
      std::vector<int> saved(stack.begin() + static_cast<long>(top) + 1, stack.end());
      stack.resize(top + 1);
      int b = stack.back();
      blocks[static_cast<std::size_t>(b)].push_back(i);
      go(i + 1);
      blocks[static_cast<std::size_t>(b)].pop_back();
      stack.insert(stack.end(), saved.begin(), saved.end());
    }
  }
};

}  // namespace

void for_each_nc_multiple(const Rational& q, long n, const std::function<void(const Partition&)>& f) {
  Rational L = q * n;
  Rational q2 = q * 2;
  if (q <= 0 || q2.get_den() != 1) throw DomainError("q must be a positive integer or half-integer");
  if (n < 0) throw DomainError("n must be non-negative");
  if (L.get_den() != 1) return;
  const long len = L.get_num().get_si();
  if (len > 20) throw ResourceError("enumerate_nc_multiple: qn too large");
  const int step = static_cast<int>(q.get_den() == 1 ? q.get_num().get_si() : q2.get_num().get_si());
  if (len == 0) {
    f(Partition{});
    return;
  }
  NcWalker w{static_cast<int>(len), step, &f, {}, {}};
  w.go(0);
}

std::vector<Partition> enumerate_nc_multiple(const Rational& q, long n) {
  std::vector<Partition> out;
  for_each_nc_multiple(q, n, [&](const Partition& p) { out.push_back(p); });
  return out;
}

std::vector<long long> count_nc_multiple_by_blocks(const Rational& q, long n) {
  std::vector<long long> c(static_cast<std::size_t>(std::max<long>(n, 0) + 1), 0);
  for_each_nc_multiple(q, n, [&](const Partition& p) {
    if (p.size() < c.size()) ++c[p.size()];
  });
  return c;
}

}  // namespace tfp
