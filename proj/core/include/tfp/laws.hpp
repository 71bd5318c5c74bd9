#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfp/fuss.hpp"
#include "tfp/series.hpp"

namespace tfp {

// m_n = F_p(n/2) at even n, zero at odd n.
template <class R>
MomentSeries<R> semicircular_moments(int p, int K) {
  if (p < 1) throw DomainError("semicircular: p must be positive");
  Series<R> s(K);
  for (int n = 0; n <= K; n += 2) s[n] = from_rational<R>(Rational(fuss_catalan(p, n / 2)));
  return {p, s};
}

template <class R>
CumulantSeries<R> semicircular_cumulants(int p, int K) {
  Series<R> s = Series<R>::one(K);
  if (K >= 2) s[2] = R(1);
  return {p, s};
}

// Order p free Poisson with parameter t: sum_b F^b_{p/2}(n) t^b.
template <class R>
MomentSeries<R> free_poisson_moments(int p, const R& t, int K) {
  if (p < 1) throw DomainError("free_poisson: p must be positive");
  const Rational q = Rational(p) / 2;
  Series<R> s = Series<R>::one(K);
  for (int n = 1; n <= K; ++n) {
    R acc(0), tb(1);
    for (int b = 1; b <= n; ++b) {
      tb = R(tb * t);
      Integer f = fuss_narayana(q, n, b);
      if (f != 0) acc += R(from_rational<R>(Rational(f)) * tb);
    }
    s[n] = acc;
  }
  return {p, s};
}

// kappa_n = t (n >= 1), only even n for odd p.
template <class R>
CumulantSeries<R> free_poisson_cumulants(int p, const R& t, int K) {
  Series<R> s = Series<R>::one(K);
  for (int n = 1; n <= K; ++n)
    if (p % 2 == 0 || n % 2 == 0) s[n] = t;
  return {p, s};
}

// m_n = F_{p/2}(n) t^n, even p.
template <class R>
MomentSeries<R> delta_moments(int p, const R& t, int K) {
  if (p < 2 || p % 2) throw DomainError("delta law: order must be even");
  Series<R> s = Series<R>::one(K);
  R tn(1);
  for (int n = 1; n <= K; ++n) {
    tn = R(tn * t);
    s[n] = R(from_rational<R>(Rational(fuss_catalan(p / 2, n))) * tn);
  }
  return {p, s};
}

template <class R>
MomentSeries<R> dilate(const MomentSeries<R>& m, const R& c) {
  return {m.p, m.s.dilate(c)};
}

// Free Poisson of parameter 1/tau, dilated. Default: m_n -> tau^(pn/2) m_n
// (exact for odd p since odd moments vanish); an explicit factor c gives c^n.
template <class R>
MomentSeries<R> marchenko_pastur_moments(int p, const Rational& tau, int K, const std::optional<Rational>& factor = {}) {
  if (tau <= 0) throw DomainError("marchenko_pastur: tau must be positive");
  auto base = free_poisson_moments<R>(p, from_rational<R>(Rational(1) / tau), K);
  if (factor) return dilate(base, from_rational<R>(*factor));
  for (int n = 1; n <= K; ++n) {
    if ((p * n) % 2) continue;  // odd n at odd p: already zero
    base.s[n] = R(base.s[n] * from_rational<R>(pow(tau, p * n / 2)));
  }
  return base;
}

enum class LawFamily { semicircular, free_poisson, marchenko_pastur, delta };

struct LawSpec {
  LawFamily family = LawFamily::semicircular;
  int p = 2;
  Rational t{1};    // free Poisson / delta parameter
  Rational tau{1};  // Marchenko-Pastur ratio
  std::optional<Rational> factor;
};

std::string law_name(LawFamily f);
LawFamily parse_law_family(const std::string& s);

MomentSeries<Rational> law_moments(const LawSpec& law, int K);
// Cumulants via the inverse recursion (closed forms where available).
CumulantSeries<Rational> law_cumulants(const LawSpec& law, int K);
MomentSeries<QPoly> law_moments_symbolic(const LawSpec& law, int K);  // in t

// Rows "law,p,t,n,m_n,kappa_n".
std::string law_table_csv(const std::vector<LawSpec>& laws, int K);

// --- CLT and Poisson limit, exact in eps ---

// kappa_n -> eps^(n-2) kappa_n with eps = k^(-1/2); needs kappa_1 = 0, kappa_2 = 1.
CumulantSeries<QPoly> clt_rescale_symbolic(const CumulantSeries<Rational>& c);
// Exact at k a perfect square of a rational; DomainError otherwise.
CumulantSeries<Rational> clt_rescale(const CumulantSeries<Rational>& c, const Rational& k);

// Cumulants of (b_{p,t} - t 1_p)/sqrt(t) as polynomials in eps = t^(-1/2).
CumulantSeries<QPoly> poisson_limit_cumulants(int p, int K);

struct PoissonLimitRow {
  Rational t;
  std::vector<long double> moments;  // n = 0..K
  long double max_error = 0;          // against F_p(n/2)
};
struct PoissonLimitReport {
  bool cumulants_exact = false;  // kappa_n = eps^(n-2) for n >= 2, kappa_1 = 0
  std::vector<PoissonLimitRow> rows;
};
PoissonLimitReport poisson_limit_check(int p, int K, const std::vector<Rational>& t_grid);

struct ExpBoundReport {
  bool kappa_hypothesis = false;  // |kappa_n| <= M^n
  bool moment_conclusion = false;  // |m_n| <= (2^p M)^n
  bool moment_hypothesis = false;  // |m_n| <= M^n
  bool kappa_conclusion = false;   // |kappa_n| <= (4^p M)^n
  bool ok() const { return (!kappa_hypothesis || moment_conclusion) && (!moment_hypothesis || kappa_conclusion); }
};
ExpBoundReport exp_bound_check(const MomentSeries<Rational>& m, const CumulantSeries<Rational>& c, double M);

// --- text formats ---

// JSON array of "num/den" strings.
std::string series_to_json(const Series<Rational>& s);
Series<Rational> series_from_json(const std::string& text);

}  // namespace tfp
