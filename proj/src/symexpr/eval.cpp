#include "plastsym/eval.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "plastsym/quadrature.hpp"

namespace plastsym::sym {

namespace {

std::string short_str(const Expr& e) {
  std::string s = e.str();
  if (s.size() > 200) s = s.substr(0, 197) + "...";
  return s;
}

double apply_binding(const FuncBinding& f, int k, double a) { return f(k, a); }
template <int N>
Dual<N> apply_binding(const FuncBinding& f, int k, const Dual<N>& a) {
  return a.chain(f(k, a.v), f(k + 1, a.v));
}

Env<double> primal_env(const Env<double>& env) { return env; }
template <int N>
Env<double> primal_env(const Env<Dual<N>>& env) {
  Env<double> out;
  out.funcs = env.funcs;
  for (const auto& [k, v] : env.values) out.values[k] = v.v;
  return out;
}

double quad_value(double integral, double /*integrand_at_upper*/, const double& /*upper*/) {
  return integral;
}
template <int N>
Dual<N> quad_value(double integral, double integrand_at_upper, const Dual<N>& upper) {
  return upper.chain(integral, integrand_at_upper);
}

template <class S>
class Evaluator {
 public:
  Evaluator(const Env<S>& env, EvalStats* stats) : env_(env), stats_(stats) {}

  S eval(const Expr& e) {
    S r = eval_node(e);
    if (!is_finite(r)) throw DomainViolation("non-finite value", short_str(e));
    if (stats_) stats_->max_abs = std::max(stats_->max_abs, std::abs(primal(r)));
    return r;
  }

 private:
  S lookup(const std::string& name) {
    auto it = env_.values.find(name);
    if (it != env_.values.end()) return it->second;
    if (name == "pi") return S(std::numbers::pi);
    throw UnboundSymbol(name);
  }

  S eval_pow(const Expr& e) {
    using std::pow;
    const Expr& be = e.args()[0];
    const Expr& xe = e.args()[1];
    S b = eval(be);
    double bv = primal(b);
    if (xe.is_const()) {
      const Rational& q = xe.value();
      if (bv == 0.0 && q.sign() < 0) throw DomainViolation("division by zero", short_str(e));
      if (q.is_integer()) {
        long n = q.to_long();
        S r(1.0);
        S base = n < 0 ? S(1.0) / b : b;
        for (long k = 0, m = n < 0 ? -n : n; k < m; ++k) r = r * base;
        return r;
      }
      if (bv < 0.0) throw DomainViolation("fractional power of a negative number", short_str(e));
      if (q == Rational(1, 2)) return sqrt_of(b);
      return pow(b, q.to_double());
    }
    S x = eval(xe);
    if (bv <= 0.0) throw DomainViolation("real power of a non-positive number", short_str(e));
    return pow(b, x);
  }

  static double sqrt_of(double b) { return std::sqrt(b); }
  template <int N>
  static Dual<N> sqrt_of(const Dual<N>& b) {
    double s = std::sqrt(b.v);
    return b.chain(s, 0.5 / s);
  }

  S eval_quad(const Expr& e) {
    S upper = eval(e.args()[1]);
    Env<double> inner = primal_env(env_);
    const Expr& integrand = e.args()[0];
    const std::string& dummy = e.name();
    auto f = [&](double s) {
      inner.values[dummy] = s;
      Evaluator<double> ev(inner, nullptr);
      return ev.eval(integrand);
    };
    double lo = e.value().to_double();
    QuadratureResult q = integrate(f, lo, primal(upper));
    if (!q.converged && !(q.error <= 1e-7 * (1.0 + std::abs(q.value)))) {
      throw DomainViolation("quadrature did not converge", short_str(e));
    }
    return quad_value(q.value, f(primal(upper)), upper);
  }

  S eval_node(const Expr& e) {
    using std::acos, std::atan, std::atan2, std::cos, std::exp, std::log, std::sin, std::tan;
    const auto& a = e.args();
    switch (e.op()) {
      case Op::Const:
        return S(e.value().to_double());
      case Op::Param:
      case Op::Var:
        return lookup(e.name());
      case Op::Func: {
        auto it = env_.funcs.find(e.name());
        if (it == env_.funcs.end()) throw UnboundSymbol(e.name());
        return apply_binding(it->second, e.order(), eval(a[0]));
      }
      case Op::Add: {
        S r(0.0);
        for (const auto& t : a) r = r + eval(t);
        return r;
      }
      case Op::Mul: {
        S r(1.0);
        for (const auto& f : a) r = r * eval(f);
        return r;
      }
      case Op::Pow:
        return eval_pow(e);
      case Op::Sin:
        return sin(eval(a[0]));
      case Op::Cos:
        return cos(eval(a[0]));
      case Op::Tan: {
        S x = eval(a[0]);
        if (std::abs(std::cos(primal(x))) < 1e-300) throw DomainViolation("tan pole", short_str(e));
        return tan(x);
      }
      case Op::Atan:
        return atan(eval(a[0]));
      case Op::Atan2: {
        S y = eval(a[0]);
        S x = eval(a[1]);
        if (primal(x) == 0.0 && primal(y) == 0.0) {
          throw DomainViolation("atan2 of the origin", short_str(e));
        }
        return atan2(y, x);
      }
      case Op::Acos: {
        S x = eval(a[0]);
        if (std::abs(primal(x)) > 1.0) throw DomainViolation("acos argument outside [-1,1]", short_str(e));
        return acos(x);
      }
      case Op::Exp:
        return exp(eval(a[0]));
      case Op::Log: {
        S x = eval(a[0]);
        if (primal(x) <= 0.0) throw DomainViolation("log of a non-positive number", short_str(e));
        return log(x);
      }
      case Op::Quad:
        return eval_quad(e);
    }
    throw std::logic_error("unknown expression node");
  }

  const Env<S>& env_;
  EvalStats* stats_;
};

}  // namespace

template <class S>
S evaluate(const Expr& e, const Env<S>& env, EvalStats* stats) {
  return Evaluator<S>(env, stats).eval(e);
}

template double evaluate<double>(const Expr&, const Env<double>&, EvalStats*);
template Dual<3> evaluate<Dual<3>>(const Expr&, const Env<Dual<3>>&, EvalStats*);

double evaluate(const Expr& e, const std::map<std::string, double>& values) {
  Env<double> env;
  env.values = values;
  return evaluate(e, env);
}

FuncBinding from_expr(const Expr& body, const std::string& var,
                      std::map<std::string, double> params) {
  struct Cache {
    std::vector<Expr> derivs;
    std::string var;
    Env<double> env;
  };
  auto cache = std::make_shared<Cache>();
  cache->derivs.push_back(body);
  cache->var = var;
  cache->env.values = std::move(params);
  return [cache](int order, double arg) {
    while (static_cast<int>(cache->derivs.size()) <= order) {
      cache->derivs.push_back(simplify(diff(cache->derivs.back(), cache->var)));
    }
    cache->env.values[cache->var] = arg;
    return evaluate(cache->derivs[order], cache->env);
  };
}

}  // namespace plastsym::sym
