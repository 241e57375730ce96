#include <cmath>

#include "plastsym/eval.hpp"
#include "plastsym/solutions.hpp"

namespace plastsym::sol {

namespace {

Expr var(const char* n) { return Expr::var(n); }

void check_annihilation(ReducedCoords& rc, const sym::ZeroTestOptions& zo) {
  for (auto& inv : rc.invariants) {
    inv.annihilated = true;
    for (const auto& X : rc.generators) {
      auto z = sym::is_zero(sym::simplify(X.apply(inv.expr)), zo);
      inv.max_abs = std::max(inv.max_abs, z.max_abs);
      if (!z.zero) inv.annihilated = false;
    }
  }
}

}  // namespace

bool ReducedCoords::all_annihilated() const {
  for (const auto& i : invariants) {
    if (!i.annihilated) return false;
  }
  return !invariants.empty();
}

const Expr& ReducedCoords::operator[](const std::string& name) const {
  for (const auto& i : invariants) {
    if (i.name == name) return i.expr;
  }
  throw std::out_of_range("no invariant named " + name);
}

ReducedCoords invariants_of(const std::string& subalgebra, const InvariantOptions& o) {
  const Expr t = var("t"), x = var("x"), y = var("y"), u = var("u"), v = var("v");
  const Expr sigma = var("sigma"), theta = var("theta");
  ReducedCoords rc;
  if (subalgebra == "DL" || subalgebra == "<D,L>") {
    rc.subalgebra = "<D,L>";
    for (vf::Kind k : {vf::Kind::D, vf::Kind::L}) {
      auto g = vf::GeneratorSpec::of(k);
      g.potential = o.V;
      rc.generators.push_back(vf::instantiate(g));
    }
    rc.invariants = {
        {"xi", (x * x + y * y) / (t * t)},
        {"T1", theta - sym::atan2(y, x)},
        {"T2", theta - sym::atan2(v, u)},
        {"R", u * u + v * v},
        {"S", sigma + vf::rho() * o.V},
    };
  } else if (subalgebra == "K" || subalgebra == "<K>") {
    rc.subalgebra = "<K>";
    auto g = vf::GeneratorSpec::of(vf::Kind::K);
    g.kappa = {Expr(0), o.kappa1, o.kappa2};
    rc.generators.push_back(vf::instantiate(g));
    const Expr lt = o.kappa2 * sym::log(t);
    rc.invariants = {
        {"r", (x * x + y * y) / (t * t)},
        {"xi", lt + o.kappa1 * sym::atan(y / x)},
        {"R", u * u + v * v},
        {"T1", lt + o.kappa1 * theta},
        {"T2", lt + o.kappa1 * sym::atan(v / u)},
        {"S", sigma},
    };
  } else {
    throw Unsupported("invariants are available for <D,L> and <K> only, not " + subalgebra);
  }
  check_annihilation(rc, o.zero);
  return rc;
}

std::array<Expr, 4> invariance_residuals(const VectorField& X, const std::array<Expr, 4>& sol) {
  const std::map<std::string, Expr> on_graph{{"u", sol[0]}, {"v", sol[1]}, {"sigma", sol[2]}, {"theta", sol[3]}};
  const int dep[4] = {vf::U, vf::V, vf::SIGMA, vf::THETA};
  const char* indep[3] = {"t", "x", "y"};
  std::array<Expr, 4> out;
  for (int a = 0; a < 4; ++a) {
    Expr r = sym::substitute(X.c[dep[a]], on_graph);
    for (int i = 0; i < 3; ++i) {
      r = r - sym::substitute(X.c[i], on_graph) * sym::diff(sol[a], indep[i]);
    }
    out[a] = r;
  }
  return out;
}

std::array<Expr, 4> dl_ansatz(const Expr& R, const Expr& T1, const Expr& T2, const Expr& S, const Expr& rho,
                              const Expr& V) {
  const Expr phi = sym::atan(var("y") / var("x"));
  const Expr arg = T1 - T2 + phi;
  return {sym::sqrt(R) * sym::cos(arg), sym::sqrt(R) * sym::sin(arg), S - rho * V, T1 + phi};
}

std::array<Expr, 4> k_ansatz(const Expr& R, const Expr& T1, const Expr& T2, const Expr& S, const Expr& kappa1,
                             const Expr& kappa2, Transcription form) {
  const Expr lt = kappa2 * sym::log(var("t"));
  const Expr v_den = form == Transcription::printed ? kappa2 : kappa1;
  return {R * sym::cos((T2 - lt) / kappa1), R * sym::sin((T2 - lt) / v_den), S, T1 - lt / kappa1};
}

FirstIntegralReport first_integral_check(const Expr& R, const Expr& T1, const Expr& T2, double lo, double hi,
                                         int samples, double tol) {
  const Expr xi = Expr::var("xi");
  const Expr I = Expr(sym::Rational(1, 2)) * xi * R * (Expr(1) + sym::cos(Expr(2) * T1 - Expr(2) * T2));
  FirstIntegralReport rep;
  rep.samples = samples;
  for (int k = 0; k < samples; ++k) {
    double s = samples == 1 ? lo : lo + (hi - lo) * k / (samples - 1);
    sym::Env<sym::Dual<3>> env;
    env.values["xi"] = sym::Dual<3>::seed(s, 0);
    auto val = sym::evaluate(I, env);
    if (k == 0) rep.value = val.v;
    rep.spread = std::max(rep.spread, std::abs(val.v - rep.value));
    rep.max_derivative = std::max(rep.max_derivative, std::abs(val.g[0]));
  }
  rep.constant = rep.spread <= tol && rep.max_derivative <= tol * std::max(1.0, std::abs(rep.value));
  return rep;
}

}  // namespace plastsym::sol
