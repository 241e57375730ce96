#include <algorithm>
#include <cmath>
#include <numbers>

#include "plastsym/classify.hpp"

namespace plastsym::cls {

using sym::Rational;

namespace {

// ---- exact polynomials over Q -----------------------------------------------

Poly trim(Poly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<long>(k)));
  return trim(d);
}

Poly sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
  return trim(a);
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return trim(c);
}

std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  a = trim(a);
  Poly quo(std::max(0, degree(a) - degree(b) + 1));
  while (!a.empty() && degree(a) >= degree(b)) {
    int shift = degree(a) - degree(b);
    Rational c = a.back() / b.back();
    quo[shift] = c;
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= c * b[k];
    a = trim(a);
  }
  return {trim(quo), a};
}

Poly monic(Poly p) {
  Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

Poly gcd(Poly a, Poly b) {
  a = trim(a);
  b = trim(b);
  while (!b.empty()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : monic(a);
}

int sign_at(const Poly& p, const Rational& x) {
  Rational acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc.sign();
}

// Yun: p = c * prod a_i^i with a_i square-free and pairwise coprime.
std::vector<Poly> square_free_parts(const Poly& p) {
  std::vector<Poly> parts;
  Poly a = gcd(p, derivative(p));
  Poly b = divmod(p, a.empty() ? Poly{1} : a).first;
  Poly c = divmod(derivative(p), a.empty() ? Poly{1} : a).first;
  Poly d = sub(c, derivative(b));
  while (degree(b) > 0) {
    Poly ai = gcd(b, d);
    parts.push_back(ai);
    b = divmod(b, ai).first;
    c = divmod(d, ai).first;
    d = sub(c, derivative(b));
  }
  return parts;
}

std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain{p, derivative(p)};
  while (degree(chain.back()) > 0) {
    Poly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(r);
  }
  return chain;
}

int variations(const std::vector<Poly>& chain, const Rational& x) {
  int v = 0, last = 0;
  for (const auto& q : chain) {
    int s = sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

struct Root {
  double value;
  std::optional<Rational> exact;
  int multiplicity;
};

// Real roots of a square-free p in (lo, hi].
void isolate(const Poly& p, const std::vector<Poly>& chain, Rational lo, Rational hi, int mult,
             std::vector<Root>& out) {
  int n = variations(chain, lo) - variations(chain, hi);
  if (n == 0) return;
  if (n == 1) {
    if (sign_at(p, hi) == 0) {
      out.push_back({hi.to_double(), hi, mult});
      return;
    }
    for (int it = 0; it < 80; ++it) {
      Rational mid = (lo + hi) / Rational(2);
      int sm = sign_at(p, mid);
      if (sm == 0) {
        out.push_back({mid.to_double(), mid, mult});
        return;
      }
      if (sm == sign_at(p, hi)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out.push_back({((lo + hi) / Rational(2)).to_double(), std::nullopt, mult});
    return;
  }
  Rational mid = (lo + hi) / Rational(2);
  isolate(p, chain, lo, mid, mult, out);
  isolate(p, chain, mid, hi, mult, out);
}

std::vector<Root> real_roots(const Poly& p) {
  // |root| < 1 + max |a_k / a_n|, widened to the working interval [-3, 3]
  Rational bound(3);
  Rational cauchy(1);
  for (const auto& c : p) {
    Rational r = Rational(1) + (c / p.back()).abs();
    if (cauchy < r) cauchy = r;
  }
  if (bound < cauchy) bound = cauchy;
  std::vector<Root> roots;
  auto parts = square_free_parts(p);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Poly& q = parts[i];
    if (degree(q) < 1) continue;
    int mult = static_cast<int>(i) + 1;
    if (degree(q) == 1) {
      Rational r = -q[0] / q[1];
      roots.push_back({r.to_double(), r, mult});
      continue;
    }
    isolate(q, sturm_chain(q), -bound, bound, mult, roots);
  }
  return roots;
}

Poly shifted_exact(const Poly& p, const Rational& t0) {
  // p(t + t0) by repeated synthetic division
  Poly c = p;
  const int n = degree(c);
  for (int k = 0; k < n; ++k) {
    for (int j = n - 1; j >= k; --j) c[j] += t0 * c[j + 1];
  }
  return c;
}

std::vector<double> shifted(const std::vector<double>& p, double t0) {
  std::vector<double> c = p;
  const int n = static_cast<int>(c.size()) - 1;
  for (int k = 0; k < n; ++k) {
    for (int j = n - 1; j >= k; --j) c[j] += t0 * c[j + 1];
  }
  return c;
}

std::vector<double> to_double(const Poly& p) {
  std::vector<double> out;
  for (const auto& c : p) out.push_back(c.to_double());
  return out;
}

// Lowest index with a coefficient above the relative cutoff.
int lowest(const std::vector<double>& c, int from, double cutoff) {
  for (int k = from; k < static_cast<int>(c.size()); ++k) {
    if (std::abs(c[k]) > cutoff) return k;
  }
  return -1;
}

double max_abs(const std::vector<double>& c) {
  double m = 0;
  for (double x : c) m = std::max(m, std::abs(x));
  return m;
}

void chop(std::vector<double>& c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
}

// Shift a chosen root of p to 0: returns p(t + t0) with the lowest
// `mult` coefficients exactly zero.
std::vector<double> shift_to_root(const Poly& p, const Root& r, double& t0) {
  if (r.exact) {
    t0 = r.exact->to_double();
    return to_double(shifted_exact(p, *r.exact));
  }
  t0 = r.value;
  std::vector<double> c = shifted(to_double(p), t0);
  for (int k = 0; k < r.multiplicity && k < static_cast<int>(c.size()); ++k) c[k] = 0.0;
  return c;
}

const Root* nearest_root(const std::vector<Root>& roots) {
  const Root* best = nullptr;
  for (const auto& r : roots) {
    if (!best || std::abs(r.value) < std::abs(best->value) ||
        (std::abs(r.value) == std::abs(best->value) && r.value < best->value)) {
      best = &r;
    }
  }
  return best;
}

}  // namespace

Poly to_poly(const Expr& e) {
  Poly out;
  Expr d = sym::simplify(e);
  Rational fact(1);
  for (int k = 0; k <= 64; ++k) {
    if (d.is_zero()) return trim(out);
    Expr at0 = sym::simplify(sym::substitute(d, {{"t", Expr(0)}}));
    if (!at0.is_const()) throw NotPolynomial("not a polynomial in t with rational coefficients: " + e.str());
    out.push_back(at0.value() / fact);
    d = sym::simplify(sym::diff(d, "t"));
    fact *= Rational(k + 1);
  }
  throw NotPolynomial("degree above 64 or not a polynomial: " + e.str());
}

Expr from_poly(const std::vector<double>& c) {
  std::vector<Expr> terms;
  const Expr t = Expr::var("t");
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0.0) continue;
    terms.push_back(Expr::from_double(c[k]) * sym::pow(t, static_cast<long>(k)));
  }
  return sym::add(std::move(terms));
}

std::string branch_name(Branch b) {
  switch (b) {
    case Branch::root: return "root";
    case Branch::no_root: return "no-root";
    case Branch::constant: return "constant";
  }
  return "?";
}

bool NormalForm::identity() const { return rotation == 0.0 && shift == 0.0 && dilation == 0.0 && scale == 1.0; }

NormalForm normal_form_1d(const Expr& f, const Expr& g, const NormalFormOptions& o) {
  return normal_form_1d(to_poly(f), to_poly(g), o);
}

NormalForm normal_form_1d(const Poly& f_in, const Poly& g_in, const NormalFormOptions& o) {
  Poly f = trim(f_in), g = trim(g_in);
  if (f.empty() && g.empty()) throw BothZero("f and g both vanish: <X_f + Y_g> is the zero subspace");
  NormalForm nf;

  // (i) proportional slots: exp(beta L) removes the Y part
  double kappa = 1.0;
  Poly w = sub(mul(f, derivative(g)), mul(derivative(f), g));
  if (w.empty() && !g.empty()) {
    if (f.empty()) {
      nf.rotation = -std::numbers::pi / 2;
      f = g;
    } else {
      double lambda = (g.back() / f.back()).to_double();
      nf.rotation = -std::atan(lambda);
      kappa = std::sqrt(1.0 + lambda * lambda);
    }
    g.clear();
  }

  // the field is now kappa (X_f + Y_g) with f, g exact
  std::vector<double> fs, gs;
  double t0 = 0.0;
  int m1 = 0;
  if (degree(f) == 0) {
    nf.branch = Branch::constant;
    fs = {f[0].to_double()};
    gs = to_double(g);
    // exp A normalises X_f here, so the moves act on g instead
    if (degree(g) >= 1) {
      auto roots = real_roots(g);
      if (const Root* r = nearest_root(roots)) {
        gs = shift_to_root(g, *r, t0);
        m1 = r->multiplicity;
      } else {
        nf.fallback = true;
      }
    }
  } else {
    auto roots = real_roots(f);
    const Root* r = nearest_root(roots);
    if (r) {
      fs = shift_to_root(f, *r, t0);
      m1 = r->multiplicity;
    } else {
      if (!o.allow_fallback) throw NoRealRoot("f has no real root; the (t - t_i) shift fallback applies");
      nf.branch = Branch::no_root;
      nf.fallback = true;
      fs = to_double(f);
      m1 = 0;
    }
    gs = g.empty() ? std::vector<double>{} : (r && r->exact ? to_double(shifted_exact(g, *r->exact))
                                                             : shifted(to_double(g), t0));
  }
  nf.shift = t0;

  // (iii) divide by the head coefficient, (iv) dilate to set the next one to +-1
  const bool on_g = nf.branch == Branch::constant;
  std::vector<double>& work = on_g ? gs : fs;
  const double head = on_g ? fs[0] : work[m1];
  int m2 = -1;
  double alpha = 0.0;
  if (on_g) {
    // X_1 is fixed by P0; D rescales X_1 and Y_{g(e^a t)} alike
    int m3 = lowest(gs, 0, 0.0);
    if (m3 >= 1) {
      double c = gs[m3] / head;
      alpha = -std::log(std::abs(c)) / m3;
      nf.m3 = m3;
    }
  } else {
    double cutoff = 1e-12 * max_abs(work);
    m2 = lowest(work, m1 + 1, cutoff);
    if (m2 > 0) alpha = -std::log(std::abs(work[m2] / head)) / (m2 - m1);
  }
  nf.dilation = alpha;

  // output = scale * e^{-alpha} kappa (X_{f(e^a t + t0)} + Y_{g(e^a t + t0)})
  const int lead = on_g ? 0 : m1;
  nf.scale = std::exp(alpha) / (kappa * head * std::exp(alpha * lead));
  const double common = nf.scale * kappa * std::exp(-alpha);
  for (std::size_t k = 0; k < fs.size(); ++k) fs[k] *= common * std::exp(alpha * static_cast<double>(k));
  for (std::size_t k = 0; k < gs.size(); ++k) gs[k] *= common * std::exp(alpha * static_cast<double>(k));

  if (on_g) {
    fs = {1.0};
    if (nf.m3 >= 1) {
      gs[nf.m3] = gs[nf.m3] > 0 ? 1.0 : -1.0;
      nf.m4 = lowest(gs, nf.m3 + 1, 1e-12 * max_abs(gs));
    }
    nf.m1 = 0;
    nf.mu = 0;
  } else {
    for (int k = 0; k < m1; ++k) fs[k] = 0.0;
    fs[m1] = 1.0;
    nf.m1 = m1;
    if (m2 > 0) {
      nf.mu = fs[m2] > 0 ? 1 : -1;
      fs[m2] = nf.mu;
      for (int k = m1 + 1; k < m2; ++k) fs[k] = 0.0;
      nf.m2 = m2;
    }
  }
  chop(fs);
  chop(gs);
  if (nf.scale == 1.0 || std::abs(nf.scale - 1.0) < 1e-15) nf.scale = 1.0;
  nf.f = fs;
  nf.g = gs;
  int fh = lowest(fs, 0, 0.0), gh = lowest(gs, 0, 0.0);
  nf.f_head = fh >= 0 ? fs[fh] : 0.0;
  nf.g_head = gh >= 0 ? gs[gh] : 0.0;

  nf.conjugator = {GroupElement::of("D", Expr::from_double(nf.dilation)),
                   GroupElement::of("P0", Expr::from_double(nf.shift)),
                   GroupElement::of("L", Expr::from_double(nf.rotation))};
  return nf;
}

}  // namespace plastsym::cls
