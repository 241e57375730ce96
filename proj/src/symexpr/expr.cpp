#include "plastsym/expr.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

namespace plastsym::sym {

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const Expr& zero_expr() {
  static const Expr z = make_node(Op::Const, {}, {}, Rational(0));
  return z;
}

}  // namespace

Expr make_node(Op op, std::vector<Expr> args, std::string name, Rational value, int order) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args = std::move(args);
  n->name = std::move(name);
  n->value = std::move(value);
  n->order = order;
  std::size_t h = static_cast<std::size_t>(op) * 1000003ULL;
  if (op == Op::Const || op == Op::Quad) h = combine(h, n->value.hash());
  if (!n->name.empty()) h = combine(h, std::hash<std::string>{}(n->name));
  h = combine(h, static_cast<std::size_t>(order));
  for (const auto& a : n->args) h = combine(h, a.hash());
  n->hash = h;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Expr() : Expr(zero_expr()) {}
Expr::Expr(long n) : Expr(constant(Rational(n))) {}
Expr::Expr(Rational r) : Expr(constant(std::move(r))) {}

Expr Expr::constant(Rational r) { return make_node(Op::Const, {}, {}, std::move(r)); }
Expr Expr::var(std::string name) { return make_node(Op::Var, {}, std::move(name)); }
Expr Expr::param(std::string name) { return make_node(Op::Param, {}, std::move(name)); }
Expr Expr::func(std::string name, int order, Expr arg) {
  if (order < 0) throw std::invalid_argument("negative derivative order");
  return make_node(Op::Func, {std::move(arg)}, std::move(name), {}, order);
}
Expr Expr::quadrature(Expr integrand, std::string dummy, Rational lower, Expr upper) {
  return make_node(Op::Quad, {std::move(integrand), std::move(upper)}, std::move(dummy),
                   std::move(lower));
}

Op Expr::op() const { return node_->op; }
const std::string& Expr::name() const { return node_->name; }
const Rational& Expr::value() const { return node_->value; }
int Expr::order() const { return node_->order; }
const std::vector<Expr>& Expr::args() const { return node_->args; }
std::size_t Expr::hash() const { return node_->hash; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

int compare(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return 0;
  if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
  switch (a.op()) {
    case Op::Const:
      return sym::compare(a.value(), b.value());
    case Op::Param:
    case Op::Var:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    default:
      break;
  }
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  if (a.order() != b.order()) return a.order() < b.order() ? -1 : 1;
  if (a.op() == Op::Quad) {
    if (int c = sym::compare(a.value(), b.value()); c != 0) return c;
  }
  const auto& aa = a.args();
  const auto& ba = b.args();
  if (aa.size() != ba.size()) return aa.size() < ba.size() ? -1 : 1;
  for (std::size_t i = 0; i < aa.size(); ++i) {
    if (int c = compare(aa[i], ba[i]); c != 0) return c;
  }
  return 0;
}

// ---- light folding -------------------------------------------------------

Expr add(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  Rational c(0);
  for (auto& t : terms) {
    if (t.op() == Op::Add) {
      for (const auto& s : t.args()) {
        if (s.is_const()) c += s.value();
        else flat.push_back(s);
      }
    } else if (t.is_const()) {
      c += t.value();
    } else {
      flat.push_back(std::move(t));
    }
  }
  if (!c.is_zero()) flat.push_back(Expr::constant(c));
  if (flat.empty()) return Expr();
  if (flat.size() == 1) return flat.front();
  return make_node(Op::Add, std::move(flat));
}

Expr mul(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  Rational c(1);
  for (auto& f : factors) {
    if (f.op() == Op::Mul) {
      for (const auto& s : f.args()) {
        if (s.is_const()) c *= s.value();
        else flat.push_back(s);
      }
    } else if (f.is_const()) {
      c *= f.value();
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (c.is_zero()) return Expr();
  if (flat.empty()) return Expr::constant(c);
  if (!c.is_one()) flat.insert(flat.begin(), Expr::constant(c));
  if (flat.size() == 1) return flat.front();
  return make_node(Op::Mul, std::move(flat));
}

Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }
Expr operator-(const Expr& a) { return mul({Expr(-1), a}); }
Expr operator-(const Expr& a, const Expr& b) { return add({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return mul({a, b}); }
Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw std::domain_error("symbolic division by zero");
  if (b.is_const()) return mul({a, Expr::constant(Rational(1) / b.value())});
  return mul({a, pow(b, -1)});
}

Expr pow(const Expr& base, const Expr& exponent) {
  if (exponent.is_zero()) return Expr(1);
  if (exponent.is_one()) return base;
  if (base.is_const() && exponent.is_const() && exponent.value().is_integer()) {
    long n = exponent.value().to_long();
    if (!(base.value().is_zero() && n < 0)) return Expr::constant(base.value().pow(n));
  }
  if (base.is_one()) return Expr(1);
  if (base.op() == Op::Pow && exponent.is_const() && exponent.value().is_integer() &&
      base.args()[1].is_const()) {
    return pow(base.args()[0], Expr::constant(base.args()[1].value() * exponent.value()));
  }
  return make_node(Op::Pow, {base, exponent});
}
Expr pow(const Expr& base, long n) { return pow(base, Expr(n)); }
Expr sqrt(const Expr& e) { return pow(e, Expr::constant(Rational(1, 2))); }

namespace {
Expr unary(Op op, const Expr& a) { return make_node(op, {a}); }
}  // namespace

Expr sin(const Expr& e) { return e.is_zero() ? Expr() : unary(Op::Sin, e); }
Expr cos(const Expr& e) { return e.is_zero() ? Expr(1) : unary(Op::Cos, e); }
Expr tan(const Expr& e) { return e.is_zero() ? Expr() : unary(Op::Tan, e); }
Expr atan(const Expr& e) { return e.is_zero() ? Expr() : unary(Op::Atan, e); }
Expr atan2(const Expr& y, const Expr& x) { return make_node(Op::Atan2, {y, x}); }
Expr acos(const Expr& e) { return e.is_one() ? Expr() : unary(Op::Acos, e); }
Expr exp(const Expr& e) { return e.is_zero() ? Expr(1) : unary(Op::Exp, e); }
Expr log(const Expr& e) { return e.is_one() ? Expr() : unary(Op::Log, e); }
Expr pi() { return Expr::param("pi"); }

const std::set<std::string>& base_variables() {
  static const std::set<std::string> names{"t", "x", "y", "u", "v", "sigma", "theta"};
  return names;
}

bool is_jet_name(std::string_view name) {
  static const std::set<std::string, std::less<>> deps{"u", "v", "sigma", "theta"};
  auto us = name.rfind('_');
  if (us == std::string_view::npos || us + 2 != name.size()) return false;
  char d = name.back();
  if (d != 't' && d != 'x' && d != 'y') return false;
  return deps.count(name.substr(0, us)) > 0;
}

bool is_builtin_constant(std::string_view name) { return name == "pi"; }

// ---- traversal -----------------------------------------------------------

namespace {

void collect(const Expr& e, FreeSymbols& out, const std::set<std::string>& bound) {
  switch (e.op()) {
    case Op::Const:
      return;
    case Op::Var:
      if (!bound.count(e.name())) out.vars.insert(e.name());
      return;
    case Op::Param:
      if (!is_builtin_constant(e.name())) out.params.insert(e.name());
      return;
    case Op::Func: {
      out.funcs.insert(e.name());
      auto& m = out.max_func_order[e.name()];
      m = std::max(m, e.order());
      break;
    }
    case Op::Quad: {
      auto inner = bound;
      inner.insert(e.name());
      collect(e.args()[0], out, inner);
      collect(e.args()[1], out, bound);
      return;
    }
    default:
      break;
  }
  for (const auto& a : e.args()) collect(a, out, bound);
}

}  // namespace

FreeSymbols free_symbols(const Expr& e) {
  FreeSymbols out;
  collect(e, out, {});
  return out;
}

bool depends_on(const Expr& e, std::string_view var) {
  switch (e.op()) {
    case Op::Const:
    case Op::Param:
      return false;
    case Op::Var:
      return e.name() == var;
    case Op::Quad:
      return (e.name() != var && depends_on(e.args()[0], var)) || depends_on(e.args()[1], var);
    default:
      return std::any_of(e.args().begin(), e.args().end(),
                         [&](const Expr& a) { return depends_on(a, var); });
  }
}

namespace {

Expr rebuild(const Expr& e, std::vector<Expr> args) {
  switch (e.op()) {
    case Op::Add:
      return add(std::move(args));
    case Op::Mul:
      return mul(std::move(args));
    case Op::Pow:
      return pow(args[0], args[1]);
    case Op::Func:
      return Expr::func(e.name(), e.order(), std::move(args[0]));
    case Op::Sin:
      return sin(args[0]);
    case Op::Cos:
      return cos(args[0]);
    case Op::Tan:
      return tan(args[0]);
    case Op::Atan:
      return atan(args[0]);
    case Op::Atan2:
      return atan2(args[0], args[1]);
    case Op::Acos:
      return acos(args[0]);
    case Op::Exp:
      return exp(args[0]);
    case Op::Log:
      return log(args[0]);
    case Op::Quad:
      return Expr::quadrature(std::move(args[0]), e.name(), e.value(), std::move(args[1]));
    default:
      return e;
  }
}

Expr map_tree(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& leaf,
              const std::set<std::string>& bound);

Expr map_children(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& leaf,
                  const std::set<std::string>& bound) {
  if (e.args().empty()) return e;
  std::vector<Expr> args;
  args.reserve(e.args().size());
  if (e.op() == Op::Quad) {
    auto inner = bound;
    inner.insert(e.name());
    args.push_back(map_tree(e.args()[0], leaf, inner));
    args.push_back(map_tree(e.args()[1], leaf, bound));
  } else {
    for (const auto& a : e.args()) args.push_back(map_tree(a, leaf, bound));
  }
  return rebuild(e, std::move(args));
}

Expr map_tree(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& leaf,
              const std::set<std::string>& bound) {
  if (e.op() == Op::Var && bound.count(e.name())) return e;
  if (auto r = leaf(e)) return *r;
  return map_children(e, leaf, bound);
}

}  // namespace

Expr substitute(const Expr& e, const std::map<std::string, Expr>& replacements) {
  return map_tree(
      e,
      [&](const Expr& n) -> std::optional<Expr> {
        if (n.op() != Op::Var) return std::nullopt;
        auto it = replacements.find(n.name());
        if (it == replacements.end()) return std::nullopt;
        return it->second;
      },
      {});
}

Expr substitute_params(const Expr& e, const std::map<std::string, Expr>& replacements) {
  return map_tree(
      e,
      [&](const Expr& n) -> std::optional<Expr> {
        if (n.op() != Op::Param) return std::nullopt;
        auto it = replacements.find(n.name());
        if (it == replacements.end()) return std::nullopt;
        return it->second;
      },
      {});
}

Expr substitute_function(const Expr& e, std::string_view fname, const Expr& body,
                         std::string_view var) {
  std::vector<Expr> derivs{body};
  std::function<std::optional<Expr>(const Expr&)> leaf;
  leaf = [&](const Expr& n) -> std::optional<Expr> {
    if (n.op() != Op::Func || n.name() != fname) return std::nullopt;
    while (static_cast<int>(derivs.size()) <= n.order()) {
      derivs.push_back(simplify(diff(derivs.back(), var)));
    }
    Expr arg = map_tree(n.args()[0], leaf, {});
    return substitute(derivs[n.order()], {{std::string(var), arg}});
  };
  return map_tree(e, leaf, {});
}

// ---- printing ------------------------------------------------------------

namespace {

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecPow = 3;
constexpr int kPrecAtom = 4;

std::string print(const Expr& e, int parent);

bool negative_term(const Expr& e) {
  if (e.is_const()) return e.value().sign() < 0;
  return e.op() == Op::Mul && e.args().front().is_const() && e.args().front().value().sign() < 0;
}

std::string wrap(const std::string& s, bool w) { return w ? "(" + s + ")" : s; }

std::string print_mul(const Expr& e, int parent) {
  Rational coef(1);
  std::vector<Expr> num, den;
  for (const auto& f : e.args()) {
    if (f.is_const()) {
      coef *= f.value();
    } else if (f.op() == Op::Pow && f.args()[1].is_const() && f.args()[1].value().sign() < 0) {
      den.push_back(pow(f.args()[0], Expr::constant(-f.args()[1].value())));
    } else {
      num.push_back(f);
    }
  }
  std::string out;
  bool neg = coef.sign() < 0;
  Rational mag = coef.abs();
  if (!mag.is_one() || num.empty()) {
    std::string c = mag.to_string();
    out = c;
    if (!num.empty()) out = wrap(c, !mag.is_integer());
  }
  for (const auto& f : num) {
    if (!out.empty()) out += "*";
    out += print(f, kPrecMul);
  }
  if (!den.empty()) {
    std::string d;
    if (den.size() == 1) {
      d = print(den.front(), kPrecPow);
    } else {
      for (std::size_t i = 0; i < den.size(); ++i) {
        if (i) d += "*";
        d += print(den[i], kPrecMul);
      }
      d = "(" + d + ")";
    }
    out += "/" + d;
  }
  if (neg) out = "-" + out;
  return wrap(out, parent > kPrecMul || (neg && parent >= kPrecMul));
}

std::string print(const Expr& e, int parent) {
  switch (e.op()) {
    case Op::Const: {
      const auto& v = e.value();
      std::string s = v.to_string();
      bool compound = v.sign() < 0 || !v.is_integer();
      return wrap(s, compound && parent >= kPrecMul);
    }
    case Op::Var:
    case Op::Param:
      return e.name();
    case Op::Func:
      return e.name() + std::string(static_cast<std::size_t>(e.order()), '\'') + "(" +
             print(e.args()[0], 0) + ")";
    case Op::Add: {
      std::string out;
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        const auto& t = e.args()[i];
        if (i == 0) {
          out = print(t, kPrecAdd);
        } else if (negative_term(t)) {
          out += " - " + print(-t, kPrecMul);
        } else {
          out += " + " + print(t, kPrecAdd);
        }
      }
      return wrap(out, parent > kPrecAdd);
    }
    case Op::Mul:
      return print_mul(e, parent);
    case Op::Pow: {
      const auto& b = e.args()[0];
      const auto& x = e.args()[1];
      if (x.is_const() && x.value() == Rational(1, 2)) return "sqrt(" + print(b, 0) + ")";
      if (x.is_const() && x.value().sign() < 0) {
        return wrap("1/" + print(pow(b, Expr::constant(-x.value())), kPrecPow), parent >= kPrecMul);
      }
      std::string xs = print(x, kPrecAtom);
      return wrap(print(b, kPrecAtom) + "^" + xs, parent > kPrecPow);
    }
    case Op::Sin:
      return "sin(" + print(e.args()[0], 0) + ")";
    case Op::Cos:
      return "cos(" + print(e.args()[0], 0) + ")";
    case Op::Tan:
      return "tan(" + print(e.args()[0], 0) + ")";
    case Op::Atan:
      return "atan(" + print(e.args()[0], 0) + ")";
    case Op::Atan2:
      return "atan2(" + print(e.args()[0], 0) + ", " + print(e.args()[1], 0) + ")";
    case Op::Acos:
      return "acos(" + print(e.args()[0], 0) + ")";
    case Op::Exp:
      return "exp(" + print(e.args()[0], 0) + ")";
    case Op::Log:
      return "ln(" + print(e.args()[0], 0) + ")";
    case Op::Quad:
      return "integrate(" + print(e.args()[0], 0) + ", " + e.name() + ", " +
             e.value().to_string() + ", " + print(e.args()[1], 0) + ")";
  }
  return "?";
}

}  // namespace

std::string Expr::str() const { return print(*this, 0); }

}  // namespace plastsym::sym
