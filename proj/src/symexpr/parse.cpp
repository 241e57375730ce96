#include <cctype>
#include <string>

#include "plastsym/expr.hpp"

namespace plastsym::sym {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr run() {
    Expr e = expression();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool accept_pow() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      return true;
    }
    if (s_.substr(pos_, 2) == "**") {
      pos_ += 2;
      return true;
    }
    return false;
  }

  Expr expression() {
    Expr e = term();
    for (;;) {
      if (accept('+')) {
        e = e + term();
      } else if (accept('-')) {
        e = e - term();
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      skip();
      if (s_.substr(pos_, 2) == "**") return e;
      if (accept('*')) {
        e = e * unary();
      } else if (accept('/')) {
        Expr d = unary();
        if (d.is_zero()) fail("division by literal zero");
        e = e / d;
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    skip();
    bool literal = pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.');
    Expr base = primary();
    // coefficient juxtaposition: 2t^2 is 2*t^2
    if (literal && pos_ < s_.size() &&
        (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '(')) {
      return base * power();
    }
    if (accept_pow()) return pow(base, unary());
    return base;
  }

  Expr number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) {
        pos_ = q;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    std::string_view lit = s_.substr(start, pos_ - start);
    if (lit == ".") fail("malformed number");
    try {
      return Expr::constant(Rational::parse(lit));
    } catch (const std::exception&) {
      fail("malformed number '" + std::string(lit) + "'");
    }
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  std::vector<Expr> arguments() {
    std::vector<Expr> args;
    if (accept(')')) return args;
    do {
      args.push_back(expression());
    } while (accept(','));
    expect(')');
    return args;
  }

  static Expr symbol(const std::string& name) {
    if (base_variables().count(name) || is_jet_name(name)) return Expr::var(name);
    return Expr::param(name);
  }

  Expr call(const std::string& name) {
    if (name == "integrate") return integral();
    std::vector<Expr> args = arguments();
    auto need = [&](std::size_t n) {
      if (args.size() != n) {
        fail(name + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
      }
    };
    if (name == "atan2") {
      need(2);
      return atan2(args[0], args[1]);
    }
    need(1);
    const Expr& a = args[0];
    if (name == "sin") return sin(a);
    if (name == "cos") return cos(a);
    if (name == "tan") return tan(a);
    if (name == "atan" || name == "arctan") return atan(a);
    if (name == "acos" || name == "arccos") return acos(a);
    if (name == "exp") return exp(a);
    if (name == "ln" || name == "log") return log(a);
    if (name == "sqrt") return sqrt(a);
    if (base_variables().count(name) || is_jet_name(name) || is_builtin_constant(name)) {
      fail("'" + name + "' is not a function");
    }
    return Expr::func(name, 0, a);
  }

  // integrate(integrand, dummy, lower, upper)
  Expr integral() {
    Expr integrand = expression();
    expect(',');
    skip();
    std::string dummy = identifier();
    if (dummy.empty()) fail("expected the integration variable");
    expect(',');
    Expr lower = expression();
    if (!lower.is_const()) fail("lower integration limit must be a number");
    expect(',');
    Expr upper = expression();
    expect(')');
    integrand = substitute_params(integrand, {{dummy, Expr::var(dummy)}});
    return Expr::quadrature(integrand, dummy, lower.value(), upper);
  }

  Expr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = identifier();
      int primes = 0;
      while (pos_ < s_.size() && s_[pos_] == '\'') {
        ++primes;
        ++pos_;
      }
      if (accept('(')) {
        if (primes == 0) return call(name);
        std::vector<Expr> args = arguments();
        if (args.size() != 1) fail("function symbols take one argument");
        return Expr::func(name, primes, args[0]);
      }
      if (primes) fail("derivative marks need an argument list");
      return symbol(name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace plastsym::sym
