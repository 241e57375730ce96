#include <cmath>

#include "doctest.h"
#include "plastsym/prolong.hpp"

using namespace plastsym;
using namespace plastsym::pr;
using sym::parse;
using vf::GeneratorSpec;
using vf::instantiate;
using vf::parse_generator;

namespace {

VectorField gen(const char* s) { return instantiate(parse_generator(s)); }

// ---- flow transport oracle ----------------------------------------------------
//
// Push the graph of fixed test functions U = (u, v, sigma, theta)(t, x, y)
// along the flow of X for time eps, then differentiate the transformed
// functions by central differences in eps and in (t, x, y), at the image
// of the base point.

using Point = std::array<double, 7>;

struct FlowOracle {
  VectorField X;
  std::array<Expr, 4> U;
  std::map<std::string, double> params{{"rho", 1.3}};

  Point field(const Point& z) const {
    std::map<std::string, double> vals = params;
    for (int i = 0; i < 7; ++i) vals[vf::coord_names()[i]] = z[i];
    Point out;
    for (int i = 0; i < 7; ++i) out[i] = sym::evaluate(X.c[i], vals);
    return out;
  }

  Point flow(double eps, Point z) const {
    const int steps = 8;
    double h = eps / steps;
    for (int s = 0; s < steps; ++s) {
      Point k1 = field(z), k2, k3, k4, w;
      for (int i = 0; i < 7; ++i) w[i] = z[i] + 0.5 * h * k1[i];
      k2 = field(w);
      for (int i = 0; i < 7; ++i) w[i] = z[i] + 0.5 * h * k2[i];
      k3 = field(w);
      for (int i = 0; i < 7; ++i) w[i] = z[i] + h * k3[i];
      k4 = field(w);
      for (int i = 0; i < 7; ++i) z[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    return z;
  }

  Point lift(const std::array<double, 3>& q) const {
    std::map<std::string, double> vals = params;
    vals["t"] = q[0];
    vals["x"] = q[1];
    vals["y"] = q[2];
    Point z{q[0], q[1], q[2], 0, 0, 0, 0};
    for (int a = 0; a < 4; ++a) z[3 + a] = sym::evaluate(U[a], vals);
    return z;
  }

  // Transformed dependent values at base point p.
  std::array<double, 4> transformed(double eps, const std::array<double, 3>& p) const {
    std::array<double, 3> q = p;
    Point z;
    for (int it = 0; it < 60; ++it) {
      z = flow(eps, lift(q));
      double err = 0;
      for (int i = 0; i < 3; ++i) {
        q[i] += p[i] - z[i];
        err = std::max(err, std::abs(p[i] - z[i]));
      }
      if (err < 1e-15) break;
    }
    z = flow(eps, lift(q));
    return {z[3], z[4], z[5], z[6]};
  }

  double jet_rate(int dep, int indep, const std::array<double, 3>& p) const {
    const double d = 1e-3, h = 1e-3;
    // jets travel with their base point
    auto shifted = [&](double eps, double sign) {
      Point moved = flow(eps, lift(p));
      std::array<double, 3> q{moved[0], moved[1], moved[2]};
      q[indep] += sign * h;
      return transformed(eps, q)[dep];
    };
    return (shifted(d, 1) - shifted(d, -1) - shifted(-d, 1) + shifted(-d, -1)) / (4 * d * h);
  }

  // Jet coefficient from the prolongation formula, at the lifted point.
  double formula(const ProlongedField& pf, int dep, int indep, const std::array<double, 3>& p) const {
    std::map<std::string, double> vals = params;
    Point z = lift(p);
    for (int i = 0; i < 7; ++i) vals[vf::coord_names()[i]] = z[i];
    for (int a = 0; a < 4; ++a) {
      for (int j = 0; j < 3; ++j) {
        vals[jet_name(dependent_names()[a], independent_names()[j])] = sym::evaluate(
            sym::diff(U[a], independent_names()[j]), {{"t", p[0]}, {"x", p[1]}, {"y", p[2]}});
      }
    }
    return sym::evaluate(pf.jet.at(jet_name(dependent_names()[dep], independent_names()[indep])),
                         vals);
  }
};

void check_transport(const VectorField& X) {
  FlowOracle o{X,
               {parse("3/10 + x*y/5 - t^2/10"), parse("1/2 - x/3 + t*y/7"),
                parse("x^2/4 + sin(y) - t/3"), parse("7/10 + x*t/9 - y^2/11")}};
  ProlongedField pf = prolong1(X);
  for (const auto& p : {std::array<double, 3>{1.1, 0.7, 0.9}, std::array<double, 3>{0.8, 1.3, 0.6}}) {
    for (int a = 0; a < 4; ++a) {
      for (int j = 0; j < 3; ++j) {
        double want = o.jet_rate(a, j, p);
        double got = o.formula(pf, a, j, p);
        INFO(jet_name(dependent_names()[a], independent_names()[j]), " at t=", p[0]);
        CHECK(std::abs(got - want) <= 2e-5 * (1 + std::abs(want)));
      }
    }
  }
}

PDESystem free_system() { return PDESystem{no_force()}; }

SymmetryReport check(const VectorField& X, const PDESystem& sys, const std::string& label = {}) {
  return check_symmetry(X, sys, {}, label);
}

}  // namespace

TEST_CASE("jet coordinates and total derivatives") {
  CHECK(jet_names().size() == 12);
  CHECK(jet_names().front() == "u_t");
  CHECK(jet_names().back() == "theta_y");
  for (const auto& n : jet_names()) CHECK(sym::is_jet_name(n));
  Expr e = parse("x*u + sigma^2 + t");
  Expr want = parse("u + x*u_x + 2*sigma*sigma_x");
  CHECK(sym::is_zero(total_derivative(e, "x") - want).zero);
  CHECK(sym::is_zero(total_derivative(e, "t") - parse("x*u_t + 2*sigma*sigma_t + 1")).zero);
}

TEST_CASE("prolongation of simple fields") {
  ProlongedField p0 = prolong1(gen("P0"));
  for (const auto& [n, c] : p0.jet) CHECK_MESSAGE(c.is_zero(), n);

  ProlongedField d = prolong1(gen("D"));
  CHECK(sym::is_zero(d.jet.at("u_x") + Expr::var("u_x")).zero);
  CHECK(sym::is_zero(d.jet.at("theta_t") + Expr::var("theta_t")).zero);

  // X_f: u_t picks up f'' and the transport term -f u_x ... only through x
  ProlongedField xf = prolong1(gen("X[f(t)]"));
  CHECK(sym::is_zero(xf.jet.at("u_t") - parse("f''(t) - f'(t)*u_x")).zero);
  CHECK(sym::is_zero(xf.jet.at("sigma_x") - parse("rho*f''(t)")).zero);
  CHECK(xf.jet.at("theta_y").is_zero());
}

TEST_CASE("prolongation agrees with transport along the flow") {
  SUBCASE("scaling") { check_transport(gen("D")); }
  SUBCASE("rotation") { check_transport(gen("L")); }
  SUBCASE("X slot") { check_transport(gen("X[t^2 + t/2]")); }
  SUBCASE("Y slot") { check_transport(gen("Y[t^3/3]")); }
  SUBCASE("generic nonlinear field") {
    VectorField g;
    const char* cs[7] = {"t*x/3",   "y^2/4 + u/5", "x*v/3",       "sin(t)*x",
                         "u*v/2",   "sigma*y + x", "theta*u/3 - t/4"};
    for (int i = 0; i < 7; ++i) g.c[i] = parse(cs[i]);
    check_transport(g);
  }
}

TEST_CASE("prolongation is linear") {
  VectorField a = gen("X[t^3]"), b = gen("L");
  Expr ka = parse("3/2"), kb = parse("-2");
  ProlongedField lhs = prolong1(ka * a + kb * b);
  ProlongedField pa = prolong1(a), pb = prolong1(b);
  for (const auto& n : jet_names()) {
    CHECK(sym::is_zero(lhs.jet.at(n) - (ka * pa.jet.at(n) + kb * pb.jet.at(n))).zero);
  }
}

TEST_CASE("system residuals and manifold solve") {
  PDESystem sys = free_system();
  auto r = sys.residuals();
  std::map<std::string, Expr> flat;
  for (const auto& n : jet_names()) flat[n] = Expr();
  for (const auto& e : r) CHECK(sym::simplify(sym::substitute(e, flat)).is_zero());
  CHECK(r[3] == parse("u_x + v_y"));

  for (const Force& f : {no_force(), monogenic(parse("x*y + t*x^2")), friction({})}) {
    PDESystem s{f};
    ManifoldSolve m = solve_manifold(s);
    CHECK(m.solved.size() == 4);
    for (const auto& e : s.residuals()) {
      sym::ZeroTestOptions z;
      z.box.ranges["theta"] = {0.2, 1.2};
      CHECK(sym::is_zero(sym::substitute(e, m.solved), z).zero);
    }
  }
}

TEST_CASE("force-free generators satisfy the criterion") {
  PDESystem sys = free_system();
  std::vector<std::string> names{"P0", "D", "L", "S[1]", "S[t^2]", "S[h(t)]", "X[f(t)]", "Y[g(t)]"};
  for (const char* f : {"1", "t", "t^2", "t^3"}) {
    names.push_back(std::string("X[") + f + "]");
    names.push_back(std::string("Y[") + f + "]");
  }
  for (const auto& n : names) {
    SymmetryReport r = check(gen(n.c_str()), sys, n);
    INFO(n, " failing equation ", r.failing_equation);
    CHECK(r.all_passed());
    CHECK(r.trials == 100);
    for (double m : r.max_residual) CHECK(m < 1e-8);
  }
}

TEST_CASE("monogenic-force generators satisfy the criterion") {
  for (const char* pot : {"x*y", "t*x^2 - sin(y)*t + x*y^3"}) {
    PDESystem sys{monogenic(parse(pot))};
    for (const char* n : {"P0", "D", "L", "Bx[t^2]", "By[t^3 + 1]", "Bx[f(t)]", "S[h(t)]"}) {
      GeneratorSpec g = parse_generator(n);
      g.potential = parse(pot);
      SymmetryReport r = check(instantiate(g), sys, n);
      INFO(n, " with V=", pot, " failing equation ", r.failing_equation);
      CHECK(r.all_passed());
    }
    // the force-free X_f is not a symmetry once V_x depends on x or y
    SymmetryReport r = check(gen("X[t^2]"), sys);
    CHECK_FALSE(r.all_passed());
  }
}

TEST_CASE("non-symmetries fail with a witness") {
  VectorField uu;
  uu.c[vf::U] = Expr::var("u");
  SymmetryReport r = check(uu, free_system(), "u d/du");
  CHECK_FALSE(r.all_passed());
  REQUIRE(r.witness);
  CHECK(r.max_residual[r.failing_equation] > 1e-3);
  // the recorded value reproduces
  ProlongedField p = prolong1(uu);
  Expr e = sym::substitute(p.apply(free_system().residuals()[r.failing_equation]),
                           solve_manifold(free_system()).solved);
  CHECK(sym::evaluate_at(e, *r.witness) == doctest::Approx(r.witness->value).epsilon(1e-12));
}

TEST_CASE("degenerate manifold is reported") {
  SymmetryOptions o;
  o.zero.box.fixed["theta"] = 0.0;
  CHECK_THROWS_AS(check_symmetry(gen("D"), free_system(), o), ManifoldDegenerate);
}

TEST_CASE("friction force with the velocity factor") {
  FrictionParams fp;
  fp.kappa1 = Expr(1);
  fp.kappa2 = Expr(1);
  fp.h1 = Expr::var("s");
  fp.h2 = Expr(1);
  PDESystem sys{friction(fp)};
  GeneratorSpec k = parse_generator("K");
  k.kappa = {Expr(0), Expr(1), Expr(1)};
  CHECK(check(instantiate(k), sys, "K").all_passed());
  for (const char* n : {"P0", "P1", "P2", "Psigma[s(t)]"}) {
    INFO(n);
    CHECK(check(gen(n), sys, n).all_passed());
  }
  CHECK_FALSE(check(gen("D"), sys).all_passed());
  CHECK_FALSE(check(gen("L"), sys).all_passed());

  SUBCASE("formal h1, h2 and symbolic kappa") {
    PDESystem gs{friction({})};
    GeneratorSpec kk = parse_generator("K");
    kk.kappa[0] = Expr(0);
    CHECK(check(instantiate(kk), gs, "K").all_passed());
  }
}

TEST_CASE("friction force with a time term loses P0") {
  FrictionParams fp;
  fp.kappa0 = Expr(1);
  fp.kappa1 = Expr(1);
  fp.kappa2 = Expr(1);
  fp.kappa3 = Expr(0);
  fp.kappa4 = Expr(0);
  GeneratorSpec k = parse_generator("K");
  k.kappa = {Expr(1), Expr(1), Expr(1)};
  {
    PDESystem sys{friction_timed(fp)};
    for (const char* n : {"P1", "P2", "Psigma[s(t)]"}) CHECK(check(gen(n), sys, n).all_passed());
    CHECK(check(instantiate(k), sys, "K").all_passed());
  }
  fp.kappa3 = Expr(1);
  for (auto form : {Transcription::printed, Transcription::corrected}) {
    PDESystem sys{friction_timed(fp, form)};
    SymmetryReport r = check(gen("P0"), sys, "P0");
    CHECK_FALSE(r.all_passed());
    CHECK(r.witness);
    CHECK(check(gen("P1"), sys, "P1").all_passed());
  }
  // the printed phase turns the wrong way once k3 or k4 is nonzero
  CHECK_FALSE(check(instantiate(k), PDESystem{friction_timed(fp)}, "K").all_passed());
  CHECK(check(instantiate(k), PDESystem{friction_timed(fp, Transcription::corrected)}, "K")
            .all_passed());

  SUBCASE("general kappa") {
    PDESystem printed{friction_timed({})};
    PDESystem fixed{friction_timed({}, Transcription::corrected)};
    GeneratorSpec kk = parse_generator("K");
    CHECK_FALSE(check(instantiate(kk), printed, "K").all_passed());
    CHECK(check(instantiate(kk), fixed, "K").all_passed());
    CHECK_FALSE(check(gen("P0"), fixed, "P0").all_passed());
  }
}

TEST_CASE("friction force with the positional term") {
  PDESystem sys{friction_positional({})};
  GeneratorSpec k = parse_generator("K");
  k.kappa[0] = Expr(0);
  CHECK(check(instantiate(k), sys, "K").all_passed());
  CHECK(check(gen("Psigma[s(t)]"), sys, "Psigma").all_passed());
  // explicit t in the positional term: P0 is not kept
  CHECK_FALSE(check(gen("P0"), sys, "P0").all_passed());
  CHECK_FALSE(check(gen("P1"), sys, "P1").all_passed());
}
