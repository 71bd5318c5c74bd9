#include "tfp/dense_tensor.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "tfp/errors.hpp"
#include "strided.hpp"

namespace tfp {

namespace {

constexpr std::size_t kMaxEntries = std::size_t{1} << 28;

}  // namespace

std::size_t tensor_entries(int p, int N) {
  if (p < 0 || N < 1) throw DomainError("tensor: order must be >= 0 and dimension >= 1");
  std::size_t e = 1;
  for (int k = 0; k < p; ++k) {
    if (e > kMaxEntries / static_cast<std::size_t>(N)) throw ResourceError("tensor: N^p exceeds the dense size cap");
    e *= static_cast<std::size_t>(N);
  }
  return e;
}

DenseTensor::DenseTensor(int p, int N) : p_(p), N_(N), data_(tensor_entries(p, N), 0.0) {}

DenseTensor::DenseTensor(int p, int N, std::vector<double> data, bool symmetric)
    : p_(p), N_(N), data_(std::move(data)), symmetric_(symmetric) {
  if (data_.size() != tensor_entries(p, N)) throw DomainError("tensor: data size must be N^p");
  for (double x : data_)
    if (!std::isfinite(x)) throw DomainError("tensor: entries must be finite");
}

std::size_t DenseTensor::offset(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != p_) throw DomainError("tensor: index arity mismatch");
  std::size_t o = 0;
  for (int i : idx) {
    if (i < 0 || i >= N_) throw DomainError("tensor: index out of range");
    o = o * static_cast<std::size_t>(N_) + static_cast<std::size_t>(i);
  }
  return o;
}

double DenseTensor::at(std::span<const int> idx) const { return data_[offset(idx)]; }

bool DenseTensor::is_symmetric(double tol) const {
  for (int k = 0; k + 1 < p_; ++k) {
    std::vector<int> img(static_cast<std::size_t>(p_));
    for (int j = 0; j < p_; ++j) img[static_cast<std::size_t>(j)] = j;
    std::swap(img[static_cast<std::size_t>(k)], img[static_cast<std::size_t>(k + 1)]);
    DenseTensor s = permute_legs(*this, Permutation(img));
    for (std::size_t i = 0; i < data_.size(); ++i) {
      double d = std::fabs(s.data_[i] - data_[i]);
      if (tol == 0.0 ? d != 0.0 : d > tol * (1.0 + std::fabs(data_[i]))) return false;
    }
  }
  return true;
}

DenseTensor& DenseTensor::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

DenseTensor& DenseTensor::operator+=(const DenseTensor& o) {
  if (o.p_ != p_ || o.N_ != N_) throw DomainError("tensor: shape mismatch in sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  symmetric_ = symmetric_ && o.symmetric_;
  return *this;
}

DenseTensor permute_legs(const DenseTensor& T, const Permutation& sigma) {
  const int p = T.order();
  if (sigma.size() != p) throw DomainError("permute_legs: permutation size must equal the order");
  auto st = detail::strides(p, T.dim());
  // source leg m carries output index i_{sigma(m)}
  std::vector<std::size_t> src(static_cast<std::size_t>(p));
  for (int m = 0; m < p; ++m) src[static_cast<std::size_t>(sigma(m))] = st[static_cast<std::size_t>(m)];
  DenseTensor out(p, T.dim());
  detail::gather(T.data(), out.data(), p, T.dim(), src, false);
  out.set_symmetric(T.symmetric());
  return out;
}

DenseTensor symmetrize(const DenseTensor& T) {
  const int p = T.order();
  auto st = detail::strides(p, T.dim());
  DenseTensor out(p, T.dim());
  auto perms = all_permutations(p);
  std::vector<std::size_t> src(static_cast<std::size_t>(p));
  for (const auto& s : perms) {
    for (int k = 0; k < p; ++k) src[static_cast<std::size_t>(k)] = st[static_cast<std::size_t>(s(k))];
    detail::gather(T.data(), out.data(), p, T.dim(), src, true);
  }
  out *= 1.0 / static_cast<double>(perms.size());
  out.set_symmetric(true);
  return out;
}

DenseTensor outer(const DenseTensor& a, const DenseTensor& b) {
  if (a.dim() != b.dim()) throw DomainError("outer: dimension mismatch");
  DenseTensor out(a.order() + b.order(), a.dim());
  std::size_t o = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[o++] = a[i] * b[j];
  return out;
}

DenseTensor symmetrize_pair(const DenseTensor& T1, const DenseTensor& T2) {
  if (T1.dim() != T2.dim()) throw DomainError("symmetrize_pair: dimension mismatch");
  return symmetrize(outer(T1, T2));
}

DenseTensor conjugate_orthogonal(const DenseTensor& T, const std::vector<double>& U) {
  const int N = T.dim(), p = T.order();
  if (U.size() != static_cast<std::size_t>(N) * static_cast<std::size_t>(N))
    throw DomainError("conjugate_orthogonal: U must be N x N");
  DenseTensor cur = T;
  std::vector<double> next(cur.size());
  const auto n = static_cast<std::size_t>(N);
  for (int k = 0; k < p; ++k) {
    std::size_t A = 1, B = 1;
    for (int j = 0; j < k; ++j) A *= n;
    for (int j = k + 1; j < p; ++j) B *= n;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t a = 0; a < A; ++a)
      for (std::size_t jj = 0; jj < n; ++jj) {
        double* dst = &next[(a * n + jj) * B];
        for (std::size_t i = 0; i < n; ++i) {
          const double u = U[jj * n + i];
          if (u == 0.0) continue;
          const double* src = &cur.data()[(a * n + i) * B];
          for (std::size_t b = 0; b < B; ++b) dst[b] += u * src[b];
        }
      }
    cur.data().swap(next);
  }
  cur.set_symmetric(T.symmetric());
  return cur;
}

void dump_tensor(std::ostream& os, const DenseTensor& T) {
  nlohmann::json h;
  h["p"] = T.order();
  h["N"] = T.dim();
  h["symmetric"] = T.symmetric();
  os << h.dump() << '\n';
  for (double x : T.data()) {
    auto bits = std::bit_cast<std::uint64_t>(x);
    unsigned char b[8];
    for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(bits >> (8 * k));
    os.write(reinterpret_cast<const char*>(b), 8);
  }
}

DenseTensor load_tensor(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("tensor: missing header");
  int p = 0, N = 0;
  bool sym = false;
  try {
    auto h = nlohmann::json::parse(line);
    p = h.at("p").get<int>();
    N = h.at("N").get<int>();
    sym = h.value("symmetric", false);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("tensor header: ") + e.what());
  }
  std::vector<double> data(tensor_entries(p, N));
  for (double& x : data) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) throw IoError("tensor: truncated data");
    std::uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
    x = std::bit_cast<double>(bits);
  }
  return DenseTensor(p, N, std::move(data), sym);
}

}  // namespace tfp
