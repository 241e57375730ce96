#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace plastsym::sym {

// Exact arbitrary-precision rational. Every finite double is representable,
// so constants coming from numeric code stay exact once they enter an Expr.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n, long d);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  static Rational from_double(double d);
  // Accepts "3", "-3/4", "0.25", "1e-3", "2.5E+2".
  static Rational parse(std::string_view text);

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  // Throws std::overflow_error when the value is not an integer in long range.
  long to_long() const;
  double to_double() const { return q_.get_d(); }
  std::size_t hash() const;
  // Exact "n" or "n/d".
  std::string to_string() const;

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend int compare(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }

  Rational pow(long n) const;
  Rational abs() const { return Rational(mpq_class(::abs(q_))); }

 private:
  mpq_class q_;
};

int compare(const Rational& a, const Rational& b);

}  // namespace plastsym::sym
