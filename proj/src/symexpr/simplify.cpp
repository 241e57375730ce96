#include <map>
#include <utility>

#include "plastsym/expr.hpp"

namespace plastsym::sym {

namespace {

// Sorted (atom, exponent) pairs; atoms are never sums with integer
// exponent between 1 and kMaxExpand.
using Monomial = std::vector<std::pair<Expr, Rational>>;

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (int c = compare(a[i].first, b[i].first); c != 0) return c < 0;
      if (int c = compare(a[i].second, b[i].second); c != 0) return c < 0;
    }
    return a.size() < b.size();
  }
};

using Poly = std::map<Monomial, Rational, MonomialLess>;

constexpr long kMaxExpand = 8;

Poly expand(const Expr& e);
Expr rebuild(const Poly& p);

Poly constant_poly(const Rational& c) {
  Poly p;
  if (!c.is_zero()) p[{}] = c;
  return p;
}

Poly atom_poly(const Expr& atom, const Rational& exponent = Rational(1)) {
  Poly p;
  p[{{atom, exponent}}] = Rational(1);
  return p;
}

void accumulate(Poly& into, const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = into.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) into.erase(it);
  }
}

Poly poly_mul(const Poly& a, const Poly& b);

Poly folded(const Expr& e) { return e.is_const() ? constant_poly(e.value()) : atom_poly(e); }

// Multiplies two monomials; sums whose merged exponent turns into a small
// positive integer are expanded back out.
Poly mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? 1 : j == b.size() ? -1 : compare(a[i].first, b[j].first);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      Rational x = a[i].second + b[j].second;
      if (!x.is_zero()) out.emplace_back(a[i].first, x);
      ++i;
      ++j;
    }
  }
  Poly result;
  Monomial rest;
  std::vector<std::pair<Expr, long>> sums;
  for (auto& [atom, x] : out) {
    if (atom.op() == Op::Add && x.is_integer() && x.sign() > 0 && x.to_long() <= kMaxExpand) {
      sums.emplace_back(atom, x.to_long());
    } else {
      rest.emplace_back(atom, x);
    }
  }
  result[rest] = Rational(1);
  for (const auto& [atom, n] : sums) {
    Poly base = expand(atom);
    for (long k = 0; k < n; ++k) result = poly_mul(result, base);
  }
  return result;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Rational c = ca * cb;
      if (ma.empty()) {
        accumulate(out, mb, c);
      } else if (mb.empty()) {
        accumulate(out, ma, c);
      } else {
        for (const auto& [m, k] : mono_mul(ma, mb)) accumulate(out, m, c * k);
      }
    }
  }
  return out;
}

Poly poly_add(Poly a, const Poly& b) {
  for (const auto& [m, c] : b) accumulate(a, m, c);
  return a;
}

Poly expand_pow(const Expr& base, const Expr& exponent) {
  if (!exponent.is_const()) {
    return folded(pow(simplify(base), simplify(exponent)));
  }
  const Rational& q = exponent.value();
  Poly b = expand(base);
  if (b.empty()) {
    if (q.sign() > 0) return {};
    return atom_poly(make_node(Op::Pow, {Expr(), exponent}));
  }
  if (b.size() == 1) {
    const auto& [m, c] = *b.begin();
    if (q.is_integer()) {
      long n = q.to_long();
      Monomial raised;
      for (const auto& [atom, x] : m) {
        if (!(x * q).is_zero()) raised.emplace_back(atom, x * q);
      }
      Poly out;
      for (const auto& [rm, rc] : mono_mul(raised, {})) accumulate(out, rm, rc * c.pow(n));
      return out;
    }
    if (c.is_one() && m.size() == 1 && m.front().second.is_one()) {
      return atom_poly(m.front().first, q);
    }
    return atom_poly(rebuild(b), q);
  }
  if (q.is_integer() && q.sign() > 0 && q.to_long() <= kMaxExpand) {
    Poly out = constant_poly(Rational(1));
    for (long k = 0; k < q.to_long(); ++k) out = poly_mul(out, b);
    return out;
  }
  return atom_poly(rebuild(b), q);
}

Poly expand(const Expr& e) {
  const auto& a = e.args();
  switch (e.op()) {
    case Op::Const:
      return constant_poly(e.value());
    case Op::Param:
    case Op::Var:
      return atom_poly(e);
    case Op::Add: {
      Poly out;
      for (const auto& t : a) out = poly_add(std::move(out), expand(t));
      return out;
    }
    case Op::Mul: {
      // Merge powers of structurally equal bases first so that a sum times
      // its own reciprocal cancels before expansion.
      std::map<Expr, Rational, ExprLess> grouped;
      std::vector<Expr> others;
      for (const auto& f : a) {
        if (f.op() == Op::Pow && f.args()[1].is_const()) {
          grouped[simplify(f.args()[0])] += f.args()[1].value();
        } else if (f.op() == Op::Add) {
          grouped[simplify(f)] += Rational(1);
        } else {
          others.push_back(f);
        }
      }
      Poly out = constant_poly(Rational(1));
      for (const auto& [base, x] : grouped) {
        if (x.is_zero()) continue;
        out = poly_mul(out, expand_pow(base, Expr::constant(x)));
        if (out.empty()) return out;
      }
      for (const auto& f : others) {
        out = poly_mul(out, expand(f));
        if (out.empty()) break;
      }
      return out;
    }
    case Op::Pow:
      return expand_pow(a[0], a[1]);
    case Op::Func:
      return atom_poly(Expr::func(e.name(), e.order(), simplify(a[0])));
    case Op::Sin:
      return folded(sin(simplify(a[0])));
    case Op::Cos:
      return folded(cos(simplify(a[0])));
    case Op::Tan:
      return folded(tan(simplify(a[0])));
    case Op::Atan:
      return folded(atan(simplify(a[0])));
    case Op::Atan2:
      return folded(atan2(simplify(a[0]), simplify(a[1])));
    case Op::Acos:
      return folded(acos(simplify(a[0])));
    case Op::Exp:
      return folded(exp(simplify(a[0])));
    case Op::Log:
      return folded(log(simplify(a[0])));
    case Op::Quad:
      return atom_poly(Expr::quadrature(simplify(a[0]), e.name(), e.value(), simplify(a[1])));
  }
  return atom_poly(e);
}

Expr rebuild(const Poly& p) {
  std::vector<Expr> terms;
  // Constant monomial sorts first; emit it last for readability.
  Rational constant(0);
  for (const auto& [m, c] : p) {
    if (m.empty()) {
      constant = c;
      continue;
    }
    std::vector<Expr> factors{Expr::constant(c)};
    for (const auto& [atom, x] : m) factors.push_back(make_node(Op::Pow, {atom, Expr::constant(x)}));
    for (auto& f : factors) {
      if (f.op() == Op::Pow && f.args()[1].is_one()) f = f.args()[0];
    }
    terms.push_back(mul(std::move(factors)));
  }
  if (!constant.is_zero()) terms.push_back(Expr::constant(constant));
  return add(std::move(terms));
}

}  // namespace

Expr simplify(const Expr& e) { return rebuild(expand(e)); }

}  // namespace plastsym::sym
