#include "tfp/fuss.hpp"

#include "tfp/errors.hpp"

namespace tfp {

namespace {

// Returns 2q as an integer, checking q is a positive integer or half-integer.
long twice(const Rational& q) {
  Rational d = q * 2;
  d.canonicalize();
  if (q <= 0 || d.get_den() != 1 || !d.get_num().fits_slong_p())
    throw DomainError("q must be a positive integer or half-integer");
  return d.get_num().get_si();
}

}  // namespace

Integer fuss_catalan(long p, long k) {
  if (p < 0 || k < 0) throw DomainError("fuss_catalan: negative argument");
  Integer num = binomial(p * k + 1, k);
  return num / (p * k + 1);
}

Rational fuss_catalan_rational(const Rational& p, long k) {
  if (p < 0 || k < 0) throw DomainError("fuss_catalan: negative argument");
  const Rational x = p * k + 1;
  Rational r(1);
  for (long i = 0; i < k; ++i) r *= (x - i) / Rational(i + 1);
  return Rational(r / x);
}

Integer fuss_narayana(const Rational& q, long n, long b) {
  const long q2 = twice(q);
  if (n < 1 || b < 1 || b > n) return 0;
  if (q2 % 2) {
    if (n % 2) return 0;
    return fuss_narayana(Rational(q2), n / 2, b);
  }
  const long qi = q2 / 2;
  Integer r = binomial(n - 1, b - 1) * binomial(qi * n, b - 1);
  return r / b;
}

Integer nc_multiple_total(const Rational& q, long n) {
  Integer s = 0;
  for (long b = 1; b <= n; ++b) s += fuss_narayana(q, n, b);
  return s;
}

}  // namespace tfp
