#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include "plastsym/dual.hpp"
#include "plastsym/expr.hpp"

namespace plastsym::sym {

// Numeric stand-in for a formal function symbol: value of the order-th
// derivative at arg.
using FuncBinding = std::function<double(int order, double arg)>;

// Binding whose derivatives are obtained by exact differentiation of body.
FuncBinding from_expr(const Expr& body, const std::string& var,
                      std::map<std::string, double> params = {});

template <class S>
struct Env {
  std::map<std::string, S> values;  // variables and parameters alike
  std::map<std::string, FuncBinding> funcs;
};

class UnboundSymbol : public std::runtime_error {
 public:
  explicit UnboundSymbol(const std::string& name)
      : std::runtime_error("unbound symbol '" + name + "'"), symbol(name) {}
  std::string symbol;
};

class DomainViolation : public std::runtime_error {
 public:
  DomainViolation(const std::string& why, const std::string& term)
      : std::runtime_error(why + " in " + term), subterm(term) {}
  std::string subterm;
};

struct EvalStats {
  double max_abs = 0.0;  // largest |value| over all subterms
};

// Throws UnboundSymbol or DomainViolation; never returns NaN or inf.
template <class S>
S evaluate(const Expr& e, const Env<S>& env, EvalStats* stats = nullptr);

double evaluate(const Expr& e, const std::map<std::string, double>& values);

extern template double evaluate<double>(const Expr&, const Env<double>&, EvalStats*);
extern template Dual<3> evaluate<Dual<3>>(const Expr&, const Env<Dual<3>>&, EvalStats*);

}  // namespace plastsym::sym
