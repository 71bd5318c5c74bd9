#pragma once

#include <cstddef>
#include <vector>

namespace tfp::detail {

inline std::vector<std::size_t> strides(int p, int N) {
  std::vector<std::size_t> s(static_cast<std::size_t>(p), 1);
  for (int k = p - 2; k >= 0; --k)
    s[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k + 1)] * static_cast<std::size_t>(N);
  return s;
}

// out[i] (=|+=) in[sum_m i_m src_stride[m]] over all multi-indices i of the
// p-leg output, legs of dimension N, last leg fastest.
inline void gather(const double* in, double* out, std::size_t out_size, int p, int N,
                   const std::vector<std::size_t>& src_stride, bool accumulate) {
  std::vector<int> idx(static_cast<std::size_t>(p), 0);
  std::size_t src = 0;
  for (std::size_t o = 0; o < out_size; ++o) {
    if (accumulate) out[o] += in[src];
    else out[o] = in[src];
    for (int k = p - 1; k >= 0; --k) {
      auto uk = static_cast<std::size_t>(k);
      if (++idx[uk] < N) {
        src += src_stride[uk];
        break;
      }
      src -= src_stride[uk] * static_cast<std::size_t>(N - 1);
      idx[uk] = 0;
    }
  }
}

inline void gather(const std::vector<double>& in, std::vector<double>& out, int p, int N,
                   const std::vector<std::size_t>& src_stride, bool accumulate) {
  gather(in.data(), out.data(), out.size(), p, N, src_stride, accumulate);
}

}  // namespace tfp::detail
