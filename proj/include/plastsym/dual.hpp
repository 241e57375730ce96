#pragma once

#include <array>
#include <cmath>

namespace plastsym::sym {

// Forward-mode dual number carrying N partial derivatives.
template <int N>
struct Dual {
  double v = 0.0;
  std::array<double, N> g{};

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
  Dual(double value, const std::array<double, N>& grad) : v(value), g(grad) {}

  static Dual seed(double value, int k) {
    Dual d(value);
    d.g[k] = 1.0;
    return d;
  }

  Dual chain(double fv, double dfdv) const {
    Dual r(fv);
    for (int i = 0; i < N; ++i) r.g[i] = dfdv * g[i];
    return r;
  }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (int i = 0; i < N; ++i) g[i] += o.g[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (int i = 0; i < N; ++i) g[i] -= o.g[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (int i = 0; i < N; ++i) g[i] = g[i] * o.v + v * o.g[i];
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    double inv = 1.0 / o.v;
    for (int i = 0; i < N; ++i) g[i] = (g[i] * o.v - v * o.g[i]) * inv * inv;
    v *= inv;
    return *this;
  }
  Dual operator-() const { return chain(-v, -1.0); }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
};

template <int N>
Dual<N> sin(const Dual<N>& a) { return a.chain(std::sin(a.v), std::cos(a.v)); }
template <int N>
Dual<N> cos(const Dual<N>& a) { return a.chain(std::cos(a.v), -std::sin(a.v)); }
template <int N>
Dual<N> tan(const Dual<N>& a) {
  double c = std::cos(a.v);
  return a.chain(std::tan(a.v), 1.0 / (c * c));
}
template <int N>
Dual<N> atan(const Dual<N>& a) { return a.chain(std::atan(a.v), 1.0 / (1.0 + a.v * a.v)); }
template <int N>
Dual<N> acos(const Dual<N>& a) {
  return a.chain(std::acos(a.v), -1.0 / std::sqrt(1.0 - a.v * a.v));
}
template <int N>
Dual<N> exp(const Dual<N>& a) {
  double e = std::exp(a.v);
  return a.chain(e, e);
}
template <int N>
Dual<N> log(const Dual<N>& a) { return a.chain(std::log(a.v), 1.0 / a.v); }
template <int N>
Dual<N> atan2(const Dual<N>& y, const Dual<N>& x) {
  double r2 = x.v * x.v + y.v * y.v;
  Dual<N> r(std::atan2(y.v, x.v));
  for (int i = 0; i < N; ++i) r.g[i] = (x.v * y.g[i] - y.v * x.g[i]) / r2;
  return r;
}
template <int N>
Dual<N> pow(const Dual<N>& a, double p) {
  double val = std::pow(a.v, p);
  double d = p == 0.0 ? 0.0 : p * std::pow(a.v, p - 1.0);
  return a.chain(val, d);
}
template <int N>
Dual<N> pow(const Dual<N>& a, const Dual<N>& p) {
  double val = std::pow(a.v, p.v);
  Dual<N> r(val);
  double da = p.v * std::pow(a.v, p.v - 1.0);
  double dp = val * std::log(a.v);
  for (int i = 0; i < N; ++i) r.g[i] = da * a.g[i] + dp * p.g[i];
  return r;
}

template <int N>
bool is_finite(const Dual<N>& a) {
  if (!std::isfinite(a.v)) return false;
  for (double x : a.g) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}
inline bool is_finite(double a) { return std::isfinite(a); }

inline double primal(double a) { return a; }
template <int N>
double primal(const Dual<N>& a) { return a.v; }

}  // namespace plastsym::sym
