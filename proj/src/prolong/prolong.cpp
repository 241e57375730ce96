#include "plastsym/prolong.hpp"

namespace plastsym::pr {

using sym::diff;

const std::array<std::string, 3>& independent_names() {
  static const std::array<std::string, 3> n{"t", "x", "y"};
  return n;
}

const std::array<std::string, 4>& dependent_names() {
  static const std::array<std::string, 4> n{"u", "v", "sigma", "theta"};
  return n;
}

std::string jet_name(const std::string& dep, const std::string& indep) { return dep + "_" + indep; }

const std::vector<std::string>& jet_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& d : dependent_names()) {
      for (const auto& i : independent_names()) out.push_back(jet_name(d, i));
    }
    return out;
  }();
  return names;
}

Expr total_derivative(const Expr& e, const std::string& indep) {
  std::vector<Expr> terms{diff(e, indep)};
  for (const auto& d : dependent_names()) {
    Expr de = diff(e, d);
    if (!de.is_zero()) terms.push_back(Expr::var(jet_name(d, indep)) * de);
  }
  return sym::add(std::move(terms));
}

Expr ProlongedField::apply(const Expr& f) const {
  std::vector<Expr> terms{base.apply(f)};
  for (const auto& [name, coef] : jet) {
    if (coef.is_zero()) continue;
    Expr d = diff(f, name);
    if (!d.is_zero()) terms.push_back(coef * d);
  }
  return sym::add(std::move(terms));
}

ProlongedField prolong1(const VectorField& X) {
  // base coordinate order in VectorField: t, x, y, u, v, sigma, theta
  ProlongedField p;
  p.base = X;
  for (int a = 0; a < 4; ++a) {
    const std::string& dep = dependent_names()[a];
    const Expr& phi = X.c[3 + a];
    for (const auto& j : independent_names()) {
      std::vector<Expr> terms{total_derivative(phi, j)};
      for (int i = 0; i < 3; ++i) {
        Expr dxi = total_derivative(X.c[i], j);
        if (dxi.is_zero()) continue;
        terms.push_back(-(Expr::var(jet_name(dep, independent_names()[i])) * dxi));
      }
      p.jet[jet_name(dep, j)] = sym::simplify(sym::add(std::move(terms)));
    }
  }
  return p;
}

// ---- forces -----------------------------------------------------------------

namespace {

Expr var(const char* n) { return Expr::var(n); }

Expr slot(const std::optional<Expr>& body, const char* name, const Expr& arg) {
  Expr f = Expr::func(name, 0, arg);
  if (!body) return f;
  return sym::substitute_function(f, name, *body, "s");
}

}  // namespace

Force no_force() { return Force{"none", Expr(), Expr()}; }

Force monogenic(const Expr& V) { return Force{"monogenic V=" + V.str(), diff(V, "x"), diff(V, "y")}; }

Force friction(const FrictionParams& p) {
  const Expr u = var("u"), v = var("v");
  Expr q = u * u + v * v;
  Expr E = sym::exp(p.kappa1 / p.kappa2 * sym::atan(v / u));
  Expr h1 = slot(p.h1, "h1", q), h2 = slot(p.h2, "h2", q);
  return Force{"friction", (u * h1 + v * h2) * E, (v * h1 - u * h2) * E};
}

Force friction_timed(const FrictionParams& p, Transcription form) {
  Force f = friction(p);
  Expr s = var("t") + p.kappa0 / p.kappa1;
  Expr phase = p.kappa2 / p.kappa1 * sym::log(s);
  if (form == Transcription::corrected) phase = -phase;
  Expr w = sym::pow(s, -1);
  f.F1 = f.F1 + w * (p.kappa3 * sym::sin(phase) + p.kappa4 * sym::cos(phase));
  f.F2 = f.F2 + w * (-(p.kappa3 * sym::cos(phase)) + p.kappa4 * sym::sin(phase));
  f.name = form == Transcription::printed ? "friction-timed" : "friction-timed-corrected";
  return f;
}

Force friction_positional(const FrictionParams& p) {
  Force f = friction(p);
  const Expr t = var("t"), x = var("x"), y = var("y");
  Expr xi = (x * x + y * y) / (t * t);
  Expr E = sym::exp(p.kappa1 / p.kappa2 * sym::atan(y / x));
  Expr h3 = slot(p.h3, "h3", xi), h4 = slot(p.h4, "h4", xi);
  Expr w = sym::pow(t, -1) * E;
  f.F1 = f.F1 + w * (x * h3 + y * h4);
  f.F2 = f.F2 + w * (y * h3 - x * h4);
  f.name = "friction-positional";
  return f;
}

// ---- system -----------------------------------------------------------------

std::array<Expr, 4> PDESystem::residuals() const {
  auto j = [](const char* n) { return Expr::var(n); };
  const Expr u = var("u"), v = var("v"), th = var("theta");
  Expr c2 = sym::cos(2 * th), s2 = sym::sin(2 * th);
  Expr a = j("sigma_x") - (j("theta_x") * c2 + j("theta_y") * s2) +
           rho * (force.F1 - j("u_t") - u * j("u_x") - v * j("u_y"));
  Expr b = j("sigma_y") - (j("theta_x") * s2 - j("theta_y") * c2) +
           rho * (force.F2 - j("v_t") - u * j("v_x") - v * j("v_y"));
  Expr c = (j("u_y") + j("v_x")) * s2 + (j("u_x") - j("v_y")) * c2;
  Expr d = j("u_x") + j("v_y");
  return {a, b, c, d};
}

ManifoldSolve solve_manifold(const PDESystem& sys) {
  auto j = [](const char* n) { return Expr::var(n); };
  const Expr u = var("u"), v = var("v"), th = var("theta");
  Expr c2 = sym::cos(2 * th), s2 = sym::sin(2 * th);
  ManifoldSolve m;
  Expr vy = -j("u_x");
  Expr vx = -j("u_y") - 2 * j("u_x") * c2 / s2;
  m.solved["v_y"] = vy;
  m.solved["v_x"] = vx;
  m.solved["sigma_x"] = j("theta_x") * c2 + j("theta_y") * s2 -
                        sys.rho * (sys.force.F1 - j("u_t") - u * j("u_x") - v * j("u_y"));
  m.solved["sigma_y"] = j("theta_x") * s2 - j("theta_y") * c2 -
                        sys.rho * (sys.force.F2 - j("v_t") - u * vx - v * vy);
  return m;
}

SymmetryOptions::SymmetryOptions() {
  zero.trials = 100;
  zero.tol = 1e-8;
  zero.box.ranges["theta"] = {0.2, 1.2};
}

SymmetryReport check_symmetry(const VectorField& X, const PDESystem& sys,
                              const SymmetryOptions& opts, std::string label) {
  SymmetryReport rep;
  rep.generator = std::move(label);
  rep.force = sys.force.name;
  ProlongedField p = prolong1(X);
  ManifoldSolve m = solve_manifold(sys);
  auto res = sys.residuals();
  for (int k = 0; k < 4; ++k) {
    Expr e = sym::substitute(p.apply(res[k]), m.solved);
    sym::ZeroTestResult z;
    try {
      z = sym::is_zero(e, opts.zero);
    } catch (const sym::AllPointsOutOfDomain& err) {
      throw ManifoldDegenerate(std::string("no sample point off sin(2 theta) = 0: ") + err.what());
    }
    rep.trials = std::max(rep.trials, z.trials);
    rep.max_residual[k] = z.max_abs;
    rep.passed[k] = z.zero;
    if (!z.zero && rep.failing_equation < 0) {
      rep.failing_equation = k;
      rep.witness = z.witness;
    }
  }
  return rep;
}

}  // namespace plastsym::pr
