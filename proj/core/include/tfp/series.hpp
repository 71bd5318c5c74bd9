#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tfp/errors.hpp"
#include "tfp/rational.hpp"

namespace tfp {

template <class R>
R from_rational(const Rational& q);
template <>
inline Rational from_rational<Rational>(const Rational& q) { return q; }
template <>
inline QPoly from_rational<QPoly>(const Rational& q) { return QPoly(q); }
template <>
inline double from_rational<double>(const Rational& q) { return q.get_d(); }

inline bool is_zero(const Rational& q) { return q == 0; }
inline bool is_zero(const QPoly& q) { return q.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }

// Truncated power series c_0 + c_1 z + ... + c_K z^K.
template <class R>
class Series {
 public:
  Series() : c_(1, R(0)) {}
  explicit Series(int K) : c_(static_cast<std::size_t>(std::max(K, 0) + 1), R(0)) {}
  explicit Series(std::vector<R> c) : c_(std::move(c)) {
    if (c_.empty()) c_.push_back(R(0));
  }
  static Series one(int K) {
    Series s(K);
    s[0] = R(1);
    return s;
  }

  int K() const { return static_cast<int>(c_.size()) - 1; }
  R& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  const R& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  R coeff(int k) const { return k >= 0 && k <= K() ? c_[static_cast<std::size_t>(k)] : R(0); }
  const std::vector<R>& coeffs() const { return c_; }

  Series truncated(int K) const {
    Series s(K);
    for (int k = 0; k <= std::min(K, this->K()); ++k) s[k] = c_[static_cast<std::size_t>(k)];
    return s;
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series s(std::min(a.K(), b.K()));
    for (int k = 0; k <= s.K(); ++k) s[k] = R(a[k] + b[k]);
    return s;
  }
  friend Series operator-(const Series& a, const Series& b) {
    Series s(std::min(a.K(), b.K()));
    for (int k = 0; k <= s.K(); ++k) s[k] = R(a[k] - b[k]);
    return s;
  }
  friend Series operator*(const Series& a, const Series& b) {
    Series s(std::min(a.K(), b.K()));
    for (int i = 0; i <= s.K(); ++i) {
      if (is_zero(a[i])) continue;
      for (int j = 0; i + j <= s.K(); ++j) s[i + j] += R(a[i] * b[j]);
    }
    return s;
  }
  friend Series operator*(const R& x, const Series& a) {
    Series s(a.K());
    for (int k = 0; k <= a.K(); ++k) s[k] = R(x * a[k]);
    return s;
  }
  friend bool operator==(const Series& a, const Series& b) { return a.c_ == b.c_; }

  Series pow(int e) const {
    if (e < 0) return reciprocal().pow(-e);
    Series r = one(K()), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  // Requires an invertible constant term.
  Series reciprocal() const {
    if (is_zero(c_[0])) throw DomainError("series reciprocal: zero constant term");
    const R inv = R(R(1) / c_[0]);
    Series r(K());
    r[0] = inv;
    for (int n = 1; n <= K(); ++n) {
      R acc(0);
      for (int i = 1; i <= n; ++i) acc += R(c_[static_cast<std::size_t>(i)] * r[n - i]);
      r[n] = R(R(-acc) * inv);
    }
    return r;
  }

  // Square root with constant term 1, solved coefficient by coefficient.
  Series sqrt() const {
    if (!(c_[0] == R(1))) throw DomainError("series sqrt: constant term must be 1");
    Series s(K());
    s[0] = R(1);
    for (int n = 1; n <= K(); ++n) {
      R acc = c_[static_cast<std::size_t>(n)];
      for (int i = 1; i < n; ++i) acc -= R(s[i] * s[n - i]);
      s[n] = R(acc / R(2));
    }
    return s;
  }

  // this(inner(z)); inner must have zero constant term.
  Series compose(const Series& inner) const {
    if (!is_zero(inner[0])) throw DomainError("series compose: inner constant term must vanish");
    const int k = std::min(K(), inner.K());
    Series in = inner.truncated(k);
    Series r(k);
    for (int i = K(); i >= 0; --i) {
      r = r * in;
      r[0] += c_[static_cast<std::size_t>(i)];
    }
    return r;
  }

  // c_k -> x^k c_k.
  Series dilate(const R& x) const {
    Series s(K());
    R f(1);
    for (int k = 0; k <= K(); ++k) {
      s[k] = R(f * c_[static_cast<std::size_t>(k)]);
      f = R(f * x);
    }
    return s;
  }

  // (f - f_0) / z, truncation K-1.
  Series shift_down() const {
    Series s(std::max(K() - 1, 0));
    for (int k = 1; k <= K(); ++k) s[k - 1] = c_[static_cast<std::size_t>(k)];
    return s;
  }

  // z f, truncation K+1.
  Series shift_up() const {
    Series s(K() + 1);
    for (int k = 0; k <= K(); ++k) s[k + 1] = c_[static_cast<std::size_t>(k)];
    return s;
  }

  // z f, same truncation.
  Series times_z() const {
    Series s(K());
    for (int k = 1; k <= K(); ++k) s[k] = c_[static_cast<std::size_t>(k - 1)];
    return s;
  }

 private:
  std::vector<R> c_;
};

// m_0 = 1; odd p forces odd moments to vanish.
template <class R>
struct MomentSeries {
  int p = 2;
  Series<R> s;
  int K() const { return s.K(); }
  const R& operator[](int n) const { return s[n]; }
};

// C(z) = 1 + sum kappa_n z^n, so s[0] = 1.
template <class R>
struct CumulantSeries {
  int p = 2;
  Series<R> s;
  int K() const { return s.K(); }
  const R& operator[](int n) const { return s[n]; }
};

template <class R>
bool operator==(const MomentSeries<R>& a, const MomentSeries<R>& b) {
  return a.p == b.p && a.s == b.s;
}
template <class R>
bool operator==(const CumulantSeries<R>& a, const CumulantSeries<R>& b) {
  return a.p == b.p && a.s == b.s;
}

// Pole term plus a power series: pole / w + sum_{k >= 0} regular_k w^k.
template <class R>
struct LaurentSeries {
  R pole{0};
  Series<R> regular;

  // Substitutes w = g(u), g = g_1 u + g_2 u^2 + ... with g_1 invertible; the
  // result is again a Laurent series in u, truncated at min(K(regular), K(g) - 2).
  LaurentSeries compose(const Series<R>& g) const {
    if (!is_zero(g[0]) || g.K() < 2 || is_zero(g[1]))
      throw DomainError("laurent compose: argument must start at u^1");
    const int k = std::min(regular.K(), g.K() - 2);
    Series<R> d = g.shift_down().reciprocal().truncated(k + 1);  // u / g(u)
    Series<R> reg = regular.truncated(k).compose(g.truncated(k));
    LaurentSeries out;
    out.pole = R(pole * d[0]);
    out.regular = Series<R>(k);
    for (int i = 0; i <= k; ++i) out.regular[i] = R(reg[i] + R(pole * d[i + 1]));
    return out;
  }
};

namespace detail {

template <class R>
void check_unit(const Series<R>& s, const char* what) {
  if (!(s[0] == R(1))) throw DomainError(std::string(what) + ": constant term must be 1");
}

// Power of M used between successive admissible s: M^{p/2} for even p,
// M^p (two steps of s) for odd p.
template <class R>
Series<R> step_power(const Series<R>& M, int p) {
  return M.pow(p % 2 == 0 ? p / 2 : p);
}

}  // namespace detail

// m_n = sum_{s=1}^n kappa_s [z^{n-s}] M(z)^{s p / 2}.
template <class R>
MomentSeries<R> moments_from_cumulants(const CumulantSeries<R>& c) {
  detail::check_unit(c.s, "cumulant series");
  const int p = c.p, K = c.K();
  if (p < 1) throw DomainError("order must be positive");
  if (p % 2)
    for (int s = 1; s <= K; s += 2)
      if (!is_zero(c[s])) throw ParityError("odd order with nonzero cumulant at odd index " + std::to_string(s));
  std::vector<R> m(static_cast<std::size_t>(K + 1), R(0));
  m[0] = R(1);
  const int ds = p % 2 == 0 ? 1 : 2;
  for (int n = 1; n <= K; ++n) {
    Series<R> M(std::vector<R>(m.begin(), m.begin() + n));
    Series<R> base = detail::step_power(M, p);
    Series<R> pw = base;
    R acc(0);
    for (int s = ds; s <= n; s += ds) {
      if (!is_zero(c[s])) acc += R(c[s] * pw.coeff(n - s));
      if (s + ds <= n) pw = pw * base;
    }
    m[static_cast<std::size_t>(n)] = acc;
  }
  return {p, Series<R>(std::move(m))};
}

template <class R>
CumulantSeries<R> cumulants_from_moments(const MomentSeries<R>& mo) {
  detail::check_unit(mo.s, "moment series");
  const int p = mo.p, K = mo.K();
  if (p < 1) throw DomainError("order must be positive");
  std::vector<R> k(static_cast<std::size_t>(K + 1), R(0));
  k[0] = R(1);
  const int ds = p % 2 == 0 ? 1 : 2;
  for (int n = 1; n <= K; ++n) {
    Series<R> M(std::vector<R>(mo.s.coeffs().begin(), mo.s.coeffs().begin() + n));
    Series<R> base = detail::step_power(M, p);
    Series<R> pw = base;
    R acc = mo[n];
    for (int s = ds; s < n; s += ds) {
      if (!is_zero(k[static_cast<std::size_t>(s)])) acc -= R(k[static_cast<std::size_t>(s)] * pw.coeff(n - s));
      pw = pw * base;
    }
    if (p % 2 && n % 2) {
      if (!is_zero(acc)) throw ParityError("odd order with nonzero odd moment at index " + std::to_string(n));
      continue;
    }
    k[static_cast<std::size_t>(n)] = acc;
  }
  return {p, Series<R>(std::move(k))};
}

// M(z) == C(z M(z)^{p/2}) up to the common truncation.
template <class R>
bool verify_functional(const MomentSeries<R>& m, const CumulantSeries<R>& c) {
  if (m.p != c.p || !(m[0] == R(1)) || !(c[0] == R(1))) return false;
  const int K = std::min(m.K(), c.K());
  Series<R> M = m.s.truncated(K);
  Series<R> half = m.p % 2 == 0 ? M.pow(m.p / 2) : M.sqrt().pow(m.p);
  return c.s.truncated(K).compose(half.times_z()) == M;
}

// (C - 1) / z.
template <class R>
Series<R> r_transform(const CumulantSeries<R>& c) {
  return c.s.shift_down();
}

// (C^{p/2} - 1) / z, even p.
template <class R>
Series<R> q_transform(const CumulantSeries<R>& c) {
  if (c.p % 2) throw DomainError("q_transform: order must be even");
  return c.s.pow(c.p / 2).shift_down();
}

template <class R>
MomentSeries<R> free_convolve(const MomentSeries<R>& a, const MomentSeries<R>& b) {
  if (a.p != b.p) throw DomainError("free_convolve: orders differ");
  if (a.p % 2) throw DomainError("free_convolve: order must be even");
  auto ca = cumulants_from_moments(a), cb = cumulants_from_moments(b);
  Series<R> sum = ca.s + cb.s;
  sum[0] = R(1);
  return moments_from_cumulants(CumulantSeries<R>{a.p, sum});
}

// K(G) = z with G(z) = M(1/z)^{p/2} / z and K(z) = 1/z + Q(z); checked in u = 1/z.
template <class R>
bool cauchy_pair_check(const MomentSeries<R>& m, const CumulantSeries<R>& c) {
  if (m.p != c.p || m.p % 2) throw DomainError("cauchy_pair_check: matching even orders required");
  const int K = std::min(m.K(), c.K());
  Series<R> H = m.s.truncated(K).pow(m.p / 2);
  LaurentSeries<R> Kz{R(1), q_transform(CumulantSeries<R>{c.p, c.s.truncated(K)})};
  LaurentSeries<R> kg = Kz.compose(H.shift_up());
  if (!(kg.pole == R(1))) return false;
  for (int i = 0; i <= kg.regular.K(); ++i)
    if (!is_zero(kg.regular[i])) return false;
  return true;
}

template <class R>
bool cauchy_pair_check(const MomentSeries<R>& m) {
  return cauchy_pair_check(m, cumulants_from_moments(m));
}

// G(K(z)) = z: with V = 1/K(z) = z / (1 + z Q(z)), G(K) = V * H(V).
template <class R>
bool cauchy_pair_check_gk(const MomentSeries<R>& m, const CumulantSeries<R>& c) {
  if (m.p != c.p || m.p % 2) throw DomainError("cauchy_pair_check_gk: matching even orders required");
  const int K = std::min(m.K(), c.K());
  Series<R> Q = q_transform(CumulantSeries<R>{c.p, c.s.truncated(K)});
  Series<R> denom = Series<R>::one(K) + Q.truncated(K).times_z();
  Series<R> V = denom.reciprocal().times_z();
  Series<R> H = m.s.truncated(K).pow(m.p / 2);
  Series<R> g = H.times_z().compose(V);
  Series<R> z(K);
  if (K >= 1) z[1] = R(1);
  return g == z;
}

}  // namespace tfp
