#include <stdexcept>

#include "plastsym/expr.hpp"

namespace plastsym::sym {

Expr diff(const Expr& e, std::string_view var) {
  if (!depends_on(e, var)) return Expr();
  const auto& a = e.args();
  switch (e.op()) {
    case Op::Const:
    case Op::Param:
      return Expr();
    case Op::Var:
      return e.name() == var ? Expr(1) : Expr();
    case Op::Func:
      return Expr::func(e.name(), e.order() + 1, a[0]) * diff(a[0], var);
    case Op::Add: {
      std::vector<Expr> terms;
      for (const auto& t : a) terms.push_back(diff(t, var));
      return add(std::move(terms));
    }
    case Op::Mul: {
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < a.size(); ++i) {
        Expr di = diff(a[i], var);
        if (di.is_zero()) continue;
        std::vector<Expr> f;
        for (std::size_t j = 0; j < a.size(); ++j) f.push_back(j == i ? di : a[j]);
        terms.push_back(mul(std::move(f)));
      }
      return add(std::move(terms));
    }
    case Op::Pow: {
      const Expr& b = a[0];
      const Expr& x = a[1];
      if (!depends_on(x, var)) return x * pow(b, x - Expr(1)) * diff(b, var);
      return e * (diff(x, var) * log(b) + x * diff(b, var) / b);
    }
    case Op::Sin:
      return cos(a[0]) * diff(a[0], var);
    case Op::Cos:
      return -(sin(a[0]) * diff(a[0], var));
    case Op::Tan:
      return diff(a[0], var) / pow(cos(a[0]), 2);
    case Op::Atan:
      return diff(a[0], var) / (Expr(1) + pow(a[0], 2));
    case Op::Atan2: {
      const Expr& y = a[0];
      const Expr& x = a[1];
      return (x * diff(y, var) - y * diff(x, var)) / (pow(x, 2) + pow(y, 2));
    }
    case Op::Acos:
      return -(diff(a[0], var) / sqrt(Expr(1) - pow(a[0], 2)));
    case Op::Exp:
      return e * diff(a[0], var);
    case Op::Log:
      return diff(a[0], var) / a[0];
    case Op::Quad: {
      if (e.name() != var && depends_on(a[0], var)) {
        throw std::logic_error("differentiation under the integral sign is not supported");
      }
      return substitute(a[0], {{e.name(), a[1]}}) * diff(a[1], var);
    }
  }
  return Expr();
}

Expr diff(const Expr& e, std::string_view var, int times) {
  Expr out = e;
  for (int i = 0; i < times; ++i) out = diff(out, var);
  return out;
}

}  // namespace plastsym::sym
