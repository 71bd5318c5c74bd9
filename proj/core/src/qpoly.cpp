#include <cmath>
#include <string>

#include "tfp/errors.hpp"
#include "tfp/rational.hpp"

namespace tfp {

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view s) {
  std::string str(s);
  if (str.empty()) throw DomainError("empty rational");
  auto bad = [&] { return DomainError("not a rational number: '" + str + "'"); };
  if (str.find_first_of(".eE") != std::string::npos) {
    // decimal: mantissa and optional exponent, converted exactly
    std::size_t epos = str.find_first_of("eE");
    std::string mant = str.substr(0, epos);
    long exp10 = 0;
    if (epos != std::string::npos) {
      try {
        std::size_t used = 0;
        exp10 = std::stol(str.substr(epos + 1), &used);
        if (used != str.size() - epos - 1) throw bad();
      } catch (const std::logic_error&) {
        throw bad();
      }
    }
    bool neg = !mant.empty() && (mant[0] == '-' || mant[0] == '+');
    if (neg && mant[0] == '+') neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant.erase(0, 1);
    std::size_t dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
      digits.erase(dot, 1);
      exp10 -= static_cast<long>(mant.size() - dot - 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) throw bad();
    Rational q{Integer(digits, 10)};
    if (exp10 > 0) q *= pow(Rational(10), exp10);
    if (exp10 < 0) q /= pow(Rational(10), -exp10);
    return neg ? Rational(-q) : q;
  }
  Rational q;
  if (str.find_first_not_of("+-0123456789/") != std::string::npos || q.set_str(str, 10) != 0) throw bad();
  if (q.get_den() == 0) throw bad();
  q.canonicalize();
  return q;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer factorial(long n) {
  if (n < 0) throw DomainError("factorial of negative");
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Rational pow(const Rational& q, long e) {
  if (e < 0) {
    if (q == 0) throw DomainError("zero to negative power");
    return pow(Rational(1) / q, -e);
  }
  Rational r(1), b(q);
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

QPoly::QPoly(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::monomial(const Rational& c, int k) {
  std::vector<Rational> v(static_cast<std::size_t>(k + 1));
  v[static_cast<std::size_t>(k)] = c;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational QPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(k)];
}

Rational QPoly::eval(const Rational& x) const {
  Rational r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

long double QPoly::eval(long double x) const {
  long double r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + static_cast<long double>(it->get_d());
  return r;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const QPoly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  c_ = std::move(r);
  trim();
  return *this;
}

QPoly& QPoly::operator/=(const QPoly& o) {
  if (o.c_.size() != 1) throw DomainError("QPoly division by a non-constant or zero polynomial");
  for (auto& c : c_) c /= o.c_[0];
  return *this;
}

std::string QPoly::str(std::string_view var) const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!s.empty()) s += " + ";
    std::string coef = c_[k].get_str();
    if (k == 0) {
      s += coef;
      continue;
    }
    if (coef != "1") s += coef + "*";
    s += var;
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s;
}

}  // namespace tfp
