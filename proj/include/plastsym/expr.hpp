#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "plastsym/rational.hpp"

namespace plastsym::sym {

enum class Op : std::uint8_t {
  Const,
  Param,
  Var,
  Func,
  Add,
  Mul,
  Pow,
  Sin,
  Cos,
  Tan,
  Atan,
  Atan2,
  Acos,
  Exp,
  Log,
  Quad,
};

class Expr;
struct Node;

// Immutable expression handle. Copies share the underlying tree.
//
// Leaves are exact rationals, named parameters (rho, kappa1, a1, ...),
// variables, and applications f^(k)(arg) of formal one-argument function
// symbols. Sqrt and division are sugar over Pow.
class Expr {
 public:
  Expr();  // zero
  Expr(long n);  // NOLINT(google-explicit-constructor)
  Expr(Rational r);  // NOLINT(google-explicit-constructor)

  static Expr constant(Rational r);
  static Expr from_double(double d) { return constant(Rational::from_double(d)); }
  static Expr var(std::string name);
  static Expr param(std::string name);
  static Expr func(std::string name, int order, Expr arg);
  // integral of `integrand` over `dummy` from `lower` to `upper`.
  static Expr quadrature(Expr integrand, std::string dummy, Rational lower, Expr upper);

  Op op() const;
  const std::string& name() const;
  const Rational& value() const;
  int order() const;
  const std::vector<Expr>& args() const;
  std::size_t hash() const;
  const Node* node() const { return node_.get(); }

  bool is_const() const { return op() == Op::Const; }
  bool is_zero() const { return is_const() && value().is_zero(); }
  bool is_one() const { return is_const() && value().is_one(); }

  std::string str() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  friend Expr make_node(Op, std::vector<Expr>, std::string, Rational, int);
  std::shared_ptr<const Node> node_;
};

struct Node {
  Op op = Op::Const;
  Rational value;
  std::string name;
  int order = 0;
  std::vector<Expr> args;
  std::size_t hash = 0;
};

// Structural total order; 0 iff structurally identical.
int compare(const Expr& a, const Expr& b);
struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

// Raw node construction without folding. Prefer the operators below.
Expr make_node(Op op, std::vector<Expr> args, std::string name = {}, Rational value = {},
               int order = 0);

// Arithmetic with light folding: flattening, constant folding, 0/1 removal.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
inline Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
inline Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
inline Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr pow(const Expr& base, const Expr& exponent);
Expr pow(const Expr& base, long n);
Expr sqrt(const Expr& e);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr tan(const Expr& e);
Expr atan(const Expr& e);
Expr atan2(const Expr& y, const Expr& x);
Expr acos(const Expr& e);
Expr exp(const Expr& e);
Expr log(const Expr& e);
Expr pi();

// Names that parse and print as variables rather than parameters.
const std::set<std::string>& base_variables();
bool is_jet_name(std::string_view name);
// Parameters with a fixed numeric value supplied by the evaluator.
bool is_builtin_constant(std::string_view name);

struct FreeSymbols {
  std::set<std::string> vars;
  std::set<std::string> params;
  std::set<std::string> funcs;
  std::map<std::string, int> max_func_order;
};
FreeSymbols free_symbols(const Expr& e);
bool depends_on(const Expr& e, std::string_view var);

// Exact partial derivative. Total on the grammar; formal function symbols
// pick up one extra derivative order per application of the chain rule.
Expr diff(const Expr& e, std::string_view var);
Expr diff(const Expr& e, std::string_view var, int times);

// Replace variables (not parameters) by expressions, simultaneously.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& replacements);
// Replace parameters by expressions, simultaneously.
Expr substitute_params(const Expr& e, const std::map<std::string, Expr>& replacements);
// Replace every f^(k)(a) by d^k body/d var^k evaluated at var = a.
Expr substitute_function(const Expr& e, std::string_view fname, const Expr& body,
                         std::string_view var = "t");

// Expand and collect like terms over monomials of atoms. Not canonical for
// transcendental identities; zero-testing remains the arbiter of equality.
Expr simplify(const Expr& e);

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
// Infix syntax, see docs/expression-syntax.md.
Expr parse(std::string_view text);

}  // namespace plastsym::sym
