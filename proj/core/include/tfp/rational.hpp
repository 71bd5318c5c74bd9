#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace tfp {

using Rational = mpq_class;
using Integer = mpz_class;

// Always "num/den", den >= 1.
std::string to_string(const Rational& q);
// Accepts "a", "a/b", and finite decimals like "0.25" or "-1e-3".
Rational parse_rational(std::string_view s);

Integer binomial(long n, long k);
Integer factorial(long n);
Rational pow(const Rational& q, long e);

// Polynomial in one formal parameter with rational coefficients.
class QPoly {
 public:
  QPoly() = default;
  QPoly(long c) : QPoly(Rational(c)) {}  // NOLINT: implicit on purpose
  QPoly(const Rational& c);               // NOLINT
  explicit QPoly(std::vector<Rational> coeffs);

  static QPoly monomial(const Rational& c, int k);
  static QPoly var() { return monomial(Rational(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Rational coeff(int k) const;
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational eval(const Rational& x) const;
  long double eval(long double x) const;

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const QPoly& o);
  // Division by a nonzero constant polynomial only.
  QPoly& operator/=(const QPoly& o);

  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(QPoly a, const QPoly& b) { return a *= b; }
  friend QPoly operator/(QPoly a, const QPoly& b) { return a /= b; }
  friend QPoly operator-(QPoly a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  // e.g. "1/2*t + 2*t^2", "0" for zero.
  std::string str(std::string_view var = "t") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

}  // namespace tfp
