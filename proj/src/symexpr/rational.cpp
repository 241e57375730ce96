#include "plastsym/rational.hpp"

#include <cctype>
#include <climits>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace plastsym::sym {

Rational::Rational(long n, long d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rational Rational::from_double(double d) {
  if (!std::isfinite(d)) throw std::domain_error("non-finite double cannot be made exact");
  return Rational(mpq_class(d));
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse(s.substr(0, slash));
    Rational den = parse(s.substr(slash + 1));
    if (den.is_zero()) throw std::domain_error("rational with zero denominator");
    return num / den;
  }
  // Decimal with optional exponent, converted exactly.
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (digits.empty()) throw std::invalid_argument("malformed number: " + s);
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw std::invalid_argument("malformed number: " + s);
    std::size_t used = 0;
    exponent = std::stol(s.substr(i + 1), &used);
    if (i + 1 + used != s.size()) throw std::invalid_argument("malformed number: " + s);
  }
  mpz_class num(digits, 10);
  long e10 = exponent - frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(e10 < 0 ? -e10 : e10));
  mpq_class q = e10 >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
  if (neg) q = -q;
  return Rational(q);
}

long Rational::to_long() const {
  if (!is_integer() || !q_.get_num().fits_slong_p()) {
    throw std::overflow_error("rational " + to_string() + " is not a machine integer");
  }
  return q_.get_num().get_si();
}

std::size_t Rational::hash() const {
  return std::hash<std::string>{}(q_.get_str());
}

std::string Rational::to_string() const { return q_.get_str(); }

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::pow(long n) const {
  if (n == 0) return Rational(1);
  if (n < 0) {
    if (is_zero()) throw std::domain_error("zero to a negative power");
    return Rational(1) / pow(-n);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(den.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(n));
  return Rational(mpq_class(num, den));
}

}  // namespace plastsym::sym
