#include "plastsym/adjoint.hpp"

namespace plastsym::adj {

using vf::Kind;
using vf::Term;

namespace {

const Expr& t_var() {
  static const Expr t = Expr::var("t");
  return t;
}

Expr d(const Expr& e, int n = 1) { return sym::diff(e, "t", n); }

GeneratorSpec with_slot(Kind k, const Expr& slot) { return GeneratorSpec::of(k, slot); }

GeneratorSpec plain(Kind k) { return GeneratorSpec::of(k); }

// rho (a b'' - a'' b), the S-slot of [X_a, X_b] and of [Y_a, Y_b]
Expr same_direction_slot(const Expr& a, const Expr& b) {
  return sym::simplify(vf::rho() * (a * d(b, 2) - d(a, 2) * b));
}

Expr retime(const Expr& slot, const Expr& new_t, const ClosedOptions& o) {
  Expr s = sym::substitute(slot, {{"t", new_t}});
  return o.expand_slots ? sym::simplify(s) : s;
}

void push(AlgebraElement& out, const Expr& coef, GeneratorSpec gen) {
  if (coef.is_zero()) return;
  if (gen.slot && sym::simplify(*gen.slot).is_zero()) return;
  out.push_back({coef, std::move(gen)});
}

GeneratorSpec normalise_target(const GeneratorSpec& X) {
  if (X.potential) throw NotCovered("closed forms cover the force-free algebra only");
  switch (X.kind) {
    case Kind::P1: return with_slot(Kind::X, Expr(1));
    case Kind::P2: return with_slot(Kind::Y, Expr(1));
    case Kind::P0:
    case Kind::D:
    case Kind::L:
    case Kind::X:
    case Kind::Y:
    case Kind::S:
      return X;
    default:
      throw NotCovered("no closed form for the action on " + X.label());
  }
}

}  // namespace

GroupElement GroupElement::of(std::string_view generator, Expr param) {
  return GroupElement{vf::parse_generator(generator), std::move(param)};
}

GroupElement GroupElement::inverse() const { return GroupElement{gen, -param}; }

VectorField GroupElement::generator() const { return param * vf::instantiate(gen); }

std::string GroupElement::label() const { return "exp((" + param.str() + ")*" + gen.label() + ")"; }

VectorField ad_series(const GroupElement& g, const VectorField& X, int terms) {
  VectorField gamma = g.generator().simplified();
  VectorField sum = X;
  VectorField term = X;
  for (int n = 1; n < terms; ++n) {
    term = (Expr(sym::Rational(1, n)) * vf::bracket(gamma, term)).simplified();
    sum = sum + term;
  }
  return sum.simplified();
}

VectorField ad_series(const Composite& g, const VectorField& X, int terms) {
  VectorField out = X;
  for (auto it = g.rbegin(); it != g.rend(); ++it) out = ad_series(*it, out, terms);
  return out;
}

AdjointResult ad_closed(const GroupElement& g, const GeneratorSpec& target, const ClosedOptions& o) {
  GeneratorSpec X = normalise_target(target);
  const Expr& p = g.param;
  AdjointResult r;
  AlgebraElement& out = r.element;
  auto unchanged = [&](const char* why) {
    out.push_back({Expr(1), X});
    r.rule = why;
  };

  switch (g.gen.kind) {
    case Kind::L:
      if (X.kind == Kind::X) {
        push(out, sym::cos(p), X);
        push(out, sym::sin(p), with_slot(Kind::Y, *X.slot));
        r.rule = "rotation of X";
      } else if (X.kind == Kind::Y) {
        push(out, sym::cos(p), X);
        push(out, -sym::sin(p), with_slot(Kind::X, *X.slot));
        r.rule = "rotation of Y";
      } else {
        unchanged("L commutes with P0, D, L and S");
      }
      return r;

    case Kind::D: {
      Expr scaled = sym::exp(p) * t_var();
      if (X.kind == Kind::X || X.kind == Kind::Y) {
        push(out, sym::exp(-p), with_slot(X.kind, retime(*X.slot, scaled, o)));
        r.rule = "dilation of B: e^-a X_{f(e^a t)}";
      } else if (X.kind == Kind::S) {
        push(out, Expr(1), with_slot(Kind::S, retime(*X.slot, scaled, o)));
        r.rule = "dilation of S: S_{h(e^a t)}";
      } else if (X.kind == Kind::P0) {
        push(out, sym::exp(-p), X);
        r.rule = "dilation of P0";
      } else {
        unchanged("D commutes with D and L");
      }
      return r;
    }

    case Kind::P0: {
      Expr shifted = t_var() + p;
      if (X.kind == Kind::X || X.kind == Kind::Y || X.kind == Kind::S) {
        push(out, Expr(1), with_slot(X.kind, retime(*X.slot, shifted, o)));
        r.rule = "time translation of a slot";
      } else if (X.kind == Kind::D) {
        push(out, Expr(1), X);
        push(out, p, plain(Kind::P0));
        r.rule = "time translation of D";
      } else {
        unchanged("P0 commutes with P0 and L");
      }
      return r;
    }

    case Kind::X:
    case Kind::Y: {
      const Kind dir = g.gen.kind;
      const Kind other = dir == Kind::X ? Kind::Y : Kind::X;
      const Expr phi = sym::simplify(p * *g.gen.slot);
      r.rule = "cobord";
      if (X.kind == Kind::P0) {
        push(out, Expr(1), X);
        push(out, Expr(-1), with_slot(dir, d(phi)));
        if (!o.modulo_s) {
          push(out, Expr(sym::Rational(-1, 2)), with_slot(Kind::S, same_direction_slot(phi, d(phi))));
        }
      } else if (X.kind == Kind::D) {
        Expr psi = sym::simplify(phi - t_var() * d(phi));
        push(out, Expr(1), X);
        push(out, Expr(1), with_slot(dir, psi));
        if (!o.modulo_s) {
          push(out, Expr(sym::Rational(1, 2)), with_slot(Kind::S, same_direction_slot(phi, psi)));
        }
      } else if (X.kind == Kind::L) {
        push(out, Expr(1), X);
        // [X_f, L] = -Y_f but [Y_f, L] = +X_f
        push(out, Expr(dir == Kind::X ? -1 : 1), with_slot(other, phi));
      } else if (X.kind == dir) {
        push(out, Expr(1), X);
        if (!o.modulo_s) push(out, Expr(1), with_slot(Kind::S, same_direction_slot(phi, *X.slot)));
        r.rule = "same-direction slots";
      } else {
        unchanged("B acts trivially on the other direction and on S");
      }
      if (out.empty()) out.push_back({Expr(1), X});
      return r;
    }

    default:
      throw NotCovered("no closed form for the group element " + g.label());
  }
}

AdjointResult ad_closed(const GroupElement& g, const AlgebraElement& X, const ClosedOptions& o) {
  AdjointResult r;
  for (const auto& term : X) {
    AdjointResult part = ad_closed(g, term.gen, o);
    if (r.rule.empty()) {
      r.rule = part.rule;
    } else if (r.rule != part.rule) {
      r.rule += "; " + part.rule;
    }
    for (auto& t : part.element) r.element.push_back({sym::simplify(term.coef * t.coef), t.gen});
  }
  return r;
}

AdjointResult ad_closed(const Composite& g, const AlgebraElement& X, const ClosedOptions& o) {
  AdjointResult r{X, {}};
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    AdjointResult step = ad_closed(*it, r.element, o);
    r.element = std::move(step.element);
    r.rule = r.rule.empty() ? step.rule : r.rule + " | " + step.rule;
  }
  return r;
}

bool in_s(const VectorField& f, const sym::ZeroTestOptions& opts) {
  std::vector<Expr> parts;
  for (int i = 0; i < vf::kDim; ++i) {
    if (i == vf::SIGMA) continue;
    parts.push_back(f.c[i]);
  }
  for (int i = 1; i < vf::kDim; ++i) parts.push_back(sym::diff(f.c[vf::SIGMA], vf::coord_names()[i]));
  return sym::is_zero(std::span<const Expr>(parts), opts).zero;
}

namespace {

AdCheckReport finish(AdCheckReport rep, const VectorField& series, const AlgebraElement& closed,
                     double tol, sym::ZeroTestOptions zero) {
  zero.tol = tol;
  VectorField residual = (series - vf::instantiate(closed)).simplified();
  auto z = vf::field_is_zero(residual, zero);
  rep.closed_form = vf::to_string(closed);
  rep.passed = z.zero;
  rep.max_abs = z.max_abs;
  rep.trials = z.trials;
  rep.witness = z.witness;
  return rep;
}

}  // namespace

AdCheckReport ad_check(const GroupElement& g, const GeneratorSpec& X, int terms, double tol,
                       const ClosedOptions& o, sym::ZeroTestOptions zero) {
  return ad_check(Composite{g}, X, terms, tol, o, std::move(zero));
}

AdCheckReport ad_check(const Composite& g, const GeneratorSpec& X, int terms, double tol,
                       const ClosedOptions& o, sym::ZeroTestOptions zero) {
  AdCheckReport rep;
  for (const auto& e : g) rep.group += (rep.group.empty() ? "" : " ") + e.label();
  rep.target = X.label();
  rep.terms = terms;
  AdjointResult closed = ad_closed(g, AlgebraElement{{Expr(1), X}}, o);
  rep.rule = closed.rule;
  return finish(rep, ad_series(g, vf::instantiate(X), terms), closed.element, tol, std::move(zero));
}

}  // namespace plastsym::adj
