#include "tfp/laws.hpp"

#include <cmath>
#include <sstream>

namespace tfp {

std::string law_name(LawFamily f) {
  switch (f) {
    case LawFamily::semicircular: return "semicircular";
    case LawFamily::free_poisson: return "free_poisson";
    case LawFamily::marchenko_pastur: return "marchenko_pastur";
    case LawFamily::delta: return "delta";
  }
  return "?";
}

LawFamily parse_law_family(const std::string& s) {
  if (s == "semicircular") return LawFamily::semicircular;
  if (s == "free_poisson" || s == "free-poisson") return LawFamily::free_poisson;
  if (s == "marchenko_pastur" || s == "marchenko-pastur" || s == "mp") return LawFamily::marchenko_pastur;
  if (s == "delta") return LawFamily::delta;
  throw DomainError("unknown law family '" + s + "'");
}

MomentSeries<Rational> law_moments(const LawSpec& law, int K) {
  switch (law.family) {
    case LawFamily::semicircular: return semicircular_moments<Rational>(law.p, K);
    case LawFamily::free_poisson: return free_poisson_moments<Rational>(law.p, law.t, K);
    case LawFamily::marchenko_pastur: return marchenko_pastur_moments<Rational>(law.p, law.tau, K, law.factor);
    case LawFamily::delta: return delta_moments<Rational>(law.p, law.t, K);
  }
  throw DomainError("unknown law");
}

CumulantSeries<Rational> law_cumulants(const LawSpec& law, int K) {
  switch (law.family) {
    case LawFamily::semicircular: return semicircular_cumulants<Rational>(law.p, K);
    case LawFamily::free_poisson: return free_poisson_cumulants<Rational>(law.p, law.t, K);
    default: return cumulants_from_moments(law_moments(law, K));
  }
}

MomentSeries<QPoly> law_moments_symbolic(const LawSpec& law, int K) {
  switch (law.family) {
    case LawFamily::semicircular: return semicircular_moments<QPoly>(law.p, K);
    case LawFamily::free_poisson: return free_poisson_moments<QPoly>(law.p, QPoly::var(), K);
    case LawFamily::marchenko_pastur: return marchenko_pastur_moments<QPoly>(law.p, law.tau, K, law.factor);
    case LawFamily::delta: return delta_moments<QPoly>(law.p, QPoly::var(), K);
  }
  throw DomainError("unknown law");
}

std::string law_table_csv(const std::vector<LawSpec>& laws, int K) {
  std::ostringstream os;
  os << "law,p,t,n,m_n,kappa_n\n";
  for (const auto& law : laws) {
    auto m = law_moments(law, K);
    auto c = law_cumulants(law, K);
    std::string param;
    if (law.family == LawFamily::free_poisson || law.family == LawFamily::delta) param = to_string(law.t);
    if (law.family == LawFamily::marchenko_pastur) param = to_string(law.tau);
    for (int n = 0; n <= K; ++n)
      os << law_name(law.family) << ',' << law.p << ',' << param << ',' << n << ',' << to_string(m[n]) << ','
         << to_string(c[n]) << '\n';
  }
  return os.str();
}

CumulantSeries<QPoly> clt_rescale_symbolic(const CumulantSeries<Rational>& c) {
  if (c.K() < 2 || c[1] != 0 || c[2] != 1) throw DomainError("clt_rescale: needs kappa_1 = 0 and kappa_2 = 1");
  Series<QPoly> s = Series<QPoly>::one(c.K());
  for (int n = 2; n <= c.K(); ++n) s[n] = QPoly::monomial(c[n], n - 2);
  return {c.p, s};
}

CumulantSeries<Rational> clt_rescale(const CumulantSeries<Rational>& c, const Rational& k) {
  if (k <= 0) throw DomainError("clt_rescale: k must be positive");
  if (!mpz_perfect_square_p(k.get_num().get_mpz_t()) || !mpz_perfect_square_p(k.get_den().get_mpz_t()))
    throw DomainError("clt_rescale: k must be a square for an exact result; use clt_rescale_symbolic");
  Integer a, b;
  mpz_sqrt(a.get_mpz_t(), k.get_num().get_mpz_t());
  mpz_sqrt(b.get_mpz_t(), k.get_den().get_mpz_t());
  Rational eps(b, a);
  eps.canonicalize();
  auto sym = clt_rescale_symbolic(c);
  Series<Rational> s(c.K());
  for (int n = 0; n <= c.K(); ++n) s[n] = sym[n].eval(eps);
  return {c.p, s};
}

CumulantSeries<QPoly> poisson_limit_cumulants(int p, int K) {
  if (p % 2) throw DomainError("poisson limit: order must be even");
  auto fp = free_poisson_cumulants<QPoly>(p, QPoly::var(), K);
  auto id = cumulants_from_moments(delta_moments<QPoly>(p, QPoly::var(), K));
  Series<QPoly> s = Series<QPoly>::one(K);
  for (int n = 1; n <= K; ++n) {
    QPoly diff = fp[n] - id[n];
    // c t^a t^(-n/2) = c eps^(n - 2a)
    std::vector<Rational> e;
    for (int a = 0; a <= diff.degree(); ++a) {
      Rational co = diff.coeff(a);
      if (co == 0) continue;
      int ex = n - 2 * a;
      if (ex < 0) throw DomainError("poisson limit: rescaled cumulant diverges at n = " + std::to_string(n));
      if (static_cast<int>(e.size()) <= ex) e.resize(static_cast<std::size_t>(ex + 1));
      e[static_cast<std::size_t>(ex)] += co;
    }
    s[n] = QPoly(std::move(e));
  }
  return {p, s};
}

PoissonLimitReport poisson_limit_check(int p, int K, const std::vector<Rational>& t_grid) {
  PoissonLimitReport rep;
  auto c = poisson_limit_cumulants(p, K);
  rep.cumulants_exact = c[1].is_zero();
  for (int n = 2; n <= K; ++n) rep.cumulants_exact = rep.cumulants_exact && c[n] == QPoly::monomial(1, n - 2);
  auto m = moments_from_cumulants(c);
  auto target = semicircular_moments<Rational>(p, K);
  for (const auto& t : t_grid) {
    PoissonLimitRow row{t, {}, 0};
    long double eps = 1.0L / std::sqrt(static_cast<long double>(t.get_d()));
    for (int n = 0; n <= K; ++n) {
      long double v = m[n].eval(eps);
      row.moments.push_back(v);
      row.max_error = std::max(row.max_error, std::fabs(v - static_cast<long double>(target[n].get_d())));
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

ExpBoundReport exp_bound_check(const MomentSeries<Rational>& m, const CumulantSeries<Rational>& c, double M) {
  if (!(M > 0)) throw DomainError("exp_bound_check: M must be positive");
  const int K = std::min(m.K(), c.K());
  const long double slack = 1 + 1e-12L;
  auto within = [&](const Rational& x, long double base, int n) {
    return std::fabs(static_cast<long double>(x.get_d())) <= std::pow(base, n) * slack;
  };
  const long double Ml = M, two_p = std::pow(2.0L, m.p), four_p = std::pow(4.0L, m.p);
  ExpBoundReport r{true, true, true, true};
  for (int n = 1; n <= K; ++n) {
    r.kappa_hypothesis = r.kappa_hypothesis && within(c[n], Ml, n);
    r.moment_conclusion = r.moment_conclusion && within(m[n], two_p * Ml, n);
    r.moment_hypothesis = r.moment_hypothesis && within(m[n], Ml, n);
    r.kappa_conclusion = r.kappa_conclusion && within(c[n], four_p * Ml, n);
  }
  return r;
}

}  // namespace tfp
