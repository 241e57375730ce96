#include <random>

#include "doctest.h"
#include "plastsym/adjoint.hpp"

using namespace plastsym;
using namespace plastsym::adj;
using sym::parse;
using vf::instantiate;
using vf::parse_generator;

namespace {

Expr num(const char* s) { return parse(s); }

GeneratorSpec gen(const std::string& s) { return parse_generator(s); }

bool same(const VectorField& a, const VectorField& b, double tol = 1e-9) {
  sym::ZeroTestOptions o;
  o.tol = tol;
  return vf::field_is_zero((a - b).simplified(), o).zero;
}

// structural zero after expansion: exact for polynomial slots
bool exactly(const VectorField& a, const VectorField& b) {
  VectorField d = (a - b).simplified();
  for (const auto& c : d.c) {
    if (!c.is_zero()) return false;
  }
  return true;
}

std::string random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_int_distribution<int> c(-3, 3);
  std::string s = std::to_string(c(rng));
  for (int k = 1; k <= degree; ++k) s += " + (" + std::to_string(c(rng)) + ")*t^" + std::to_string(k);
  return s;
}

}  // namespace

TEST_CASE("series examples") {
  auto l = GroupElement::of("L", num("3/10"));
  CHECK(ad_check(l, gen("X[t^2]"), 24, 1e-10).passed);
  auto dil = GroupElement::of("D", num("2/5"));
  CHECK(ad_check(dil, gen("Y[t^3]"), 24, 1e-8).passed);

  VectorField x = instantiate(gen("X[t^2]"));
  CHECK(exactly(ad_series(l, x, 1), x));
  auto id = GroupElement::of("D", Expr(0));
  CHECK(exactly(ad_series(id, x, 10), x));
  CHECK(exactly(instantiate(ad_closed(id, gen("X[t^2]")).element), x));

  // e^{aD} X_{t^m} = e^{a(m-1)} X_{t^m}
  for (int m = 0; m <= 6; ++m) {
    std::string xm = "X[t^" + std::to_string(m) + "]";
    VectorField want = sym::exp(num("2/5") * Expr(m - 1)) * instantiate(gen(xm));
    CHECK(same(ad_series(dil, instantiate(gen(xm)), 24), want, 1e-8));
  }
}

TEST_CASE("closed forms agree with the series") {
  std::mt19937_64 rng(7);
  std::vector<GroupElement> groups{
      GroupElement::of("L", num("1/2")), GroupElement::of("L", num("-3/10")),
      GroupElement::of("D", num("1/2")), GroupElement::of("D", num("-2/5")),
      GroupElement::of("P0", num("1/2")), GroupElement::of("P0", num("-1/3"))};
  std::vector<std::string> targets{"X[f(t)]", "Y[g(t)]", "S[h(t)]", "P0", "D", "L"};
  for (int deg = 0; deg <= 6; ++deg) {
    std::string p = random_poly(rng, deg);
    targets.push_back("X[" + p + "]");
    targets.push_back("Y[" + random_poly(rng, deg) + "]");
    targets.push_back("S[" + random_poly(rng, deg) + "]");
  }
  for (const auto& g : groups) {
    for (const auto& x : targets) {
      AdCheckReport r = ad_check(g, gen(x), 24, 1e-8);
      INFO(r.group, " on ", r.target, " max ", r.max_abs);
      CHECK(r.passed);
    }
  }
}

TEST_CASE("slot rescaling: polynomial and opaque agree") {
  auto dil = GroupElement::of("D", num("1/3"));
  const char* body = "t^3 - 2*t + 5";
  AdjointResult opaque = ad_closed(dil, gen("X[f(t)]"));
  AdjointResult poly = ad_closed(dil, gen(std::string("X[") + body + "]"));
  VectorField a = instantiate(opaque.element).substitute_function("f", parse(body));
  CHECK(same(a, instantiate(poly.element), 1e-12));
  // polynomial slot coefficients are rescaled exactly
  CHECK(sym::is_zero(*poly.element[0].gen.slot - parse("exp(1/3)^3*t^3 - 2*exp(1/3)*t + 5")).zero);
}

TEST_CASE("cobords of B on A") {
  std::mt19937_64 rng(11);
  ClosedOptions quotient;
  quotient.modulo_s = true;
  std::vector<std::string> slots{"t^2", "t^3 + t", "1 + t - t^4/3"};
  for (int i = 0; i < 3; ++i) slots.push_back(random_poly(rng, 5));
  for (const char* dir : {"X", "Y"}) {
    for (const auto& s : slots) {
      auto g = GroupElement::of(std::string(dir) + "[" + s + "]", Expr(1));
      for (const char* a : {"P0", "D", "L"}) {
        INFO(dir, "[", s, "] on ", a);
        VectorField A = instantiate(gen(a));
        VectorField two = ad_series(g, A, 2), ten = ad_series(g, A, 10);
        // the published two-term action is the two-term series exactly
        CHECK(exactly(instantiate(ad_closed(g, gen(a), quotient).element), two));
        // the exact action, S-term included, is the full series
        CHECK(exactly(instantiate(ad_closed(g, gen(a)).element), ten));
        // truncation after two terms is exact modulo S only
        CHECK(in_s(ten - two));
        if (std::string(a) == "L") CHECK(exactly(two, ten));
      }
    }
  }
  // for a monomial slot the D series stops after two terms
  auto g = GroupElement::of("X[t^3]", Expr(1));
  CHECK(exactly(ad_series(g, instantiate(gen("D")), 2), ad_series(g, instantiate(gen("D")), 10)));
  // for P0 it does not: exp(X_{t^2}) P0 = P0 - X_{2t} + 2 rho t d/dsigma
  auto g2 = GroupElement::of("X[t^2]", Expr(1));
  VectorField ten = ad_series(g2, instantiate(gen("P0")), 10);
  CHECK_FALSE(exactly(ad_series(g2, instantiate(gen("P0")), 2), ten));
  CHECK(exactly(ten, instantiate(gen("P0")) - instantiate(gen("X[2*t]")) + instantiate(gen("S[2*rho*t]"))));
}

TEST_CASE("the Y cobord on L has the X sign") {
  auto g = GroupElement::of("Y[t^2 + 1]", Expr(1));
  VectorField series = ad_series(g, instantiate(gen("L")), 10);
  // as printed: L - Y_f
  CHECK_FALSE(same(series, instantiate(gen("L")) - instantiate(gen("Y[t^2 + 1]"))));
  CHECK(same(series, instantiate(gen("L")) + instantiate(gen("X[t^2 + 1]"))));
  CHECK(same(series, instantiate(ad_closed(g, gen("L")).element)));
}

TEST_CASE("B acting on B") {
  auto g = GroupElement::of("X[t^3]", num("1/2"));
  CHECK(ad_check(g, gen("X[t^2]"), 10, 1e-12).passed);
  CHECK(ad_check(g, gen("Y[t^2]"), 10, 1e-12).passed);
  CHECK(ad_check(g, gen("S[t]"), 10, 1e-12).passed);
  ClosedOptions q;
  q.modulo_s = true;
  CHECK_FALSE(ad_check(g, gen("X[t^2]"), 10, 1e-12, q).passed);
}

TEST_CASE("group properties") {
  VectorField fx = instantiate(gen("X[t^4 - t]"));
  VectorField fy = instantiate(gen("Y[t^3 + 2]"));
  SUBCASE("homomorphism of dilations") {
    Expr a = num("3/10"), b = num("-1/5");
    for (const auto& X : {gen("X[t^4 - t]"), gen("Y[t^3 + 2]"), gen("S[t^2]"), gen("P0")}) {
      AlgebraElement step = ad_closed(GroupElement::of("D", b), X).element;
      AlgebraElement composed = ad_closed(GroupElement::of("D", a), step).element;
      AlgebraElement joint = ad_closed(GroupElement::of("D", a + b), X).element;
      CHECK(same(instantiate(composed), instantiate(joint)));
      VectorField s = ad_series(GroupElement::of("D", a), ad_series(GroupElement::of("D", b), instantiate(X), 24), 24);
      CHECK(same(s, ad_series(GroupElement::of("D", a + b), instantiate(X), 24)));
    }
  }
  SUBCASE("inverse") {
    for (const auto& g : {GroupElement::of("L", num("2/5")), GroupElement::of("D", num("1/2")),
                          GroupElement::of("P0", num("1/4")), GroupElement::of("X[t^2]", Expr(1))}) {
      for (const auto& X : {gen("X[t^4 - t]"), gen("D"), gen("P0")}) {
        Composite both{g, g.inverse()};
        INFO(g.label(), " on ", X.label());
        CHECK(same(instantiate(ad_closed(both, AlgebraElement{{Expr(1), X}}).element), instantiate(X)));
      }
    }
  }
  SUBCASE("rotation by 2 pi") {
    auto full = GroupElement::of("L", 2 * sym::pi());
    CHECK(same(instantiate(ad_closed(full, gen("X[t^4 - t]")).element), fx, 1e-12));
    CHECK(same(instantiate(ad_closed(full, gen("Y[t^3 + 2]")).element), fy, 1e-12));
  }
}

TEST_CASE("generic element of exp A on B") {
  Expr a = num("2/5"), b = num("1/3"), t0 = num("1/2");
  Composite g{GroupElement::of("L", b), GroupElement::of("D", a), GroupElement::of("P0", t0)};
  Expr arg = sym::exp(a) * Expr::var("t") + t0;
  auto slot = [&](const char* dir) {
    return instantiate(vf::GeneratorSpec::of(dir[0] == 'X' ? vf::Kind::X : vf::Kind::Y,
                                             Expr::func("f", 0, arg)));
  };
  VectorField want_x = sym::exp(-a) * (sym::cos(b) * slot("X") + sym::sin(b) * slot("Y"));
  VectorField want_y = sym::exp(-a) * (sym::cos(b) * slot("Y") - sym::sin(b) * slot("X"));
  CHECK(same(instantiate(ad_closed(g, AlgebraElement{{Expr(1), gen("X[f(t)]")}}).element), want_x));
  CHECK(same(instantiate(ad_closed(g, AlgebraElement{{Expr(1), gen("Y[f(t)]")}}).element), want_y));
  CHECK(ad_check(g, gen("X[t^5 - 3*t^2]"), 24, 1e-8).passed);
  CHECK(ad_check(g, gen("Y[t^6 + t]"), 24, 1e-8).passed);
}

TEST_CASE("coverage") {
  CHECK_THROWS_AS(ad_closed(GroupElement::of("K", Expr(1)), gen("P0")), NotCovered);
  CHECK_THROWS_AS(ad_closed(GroupElement::of("S[t]", Expr(1)), gen("P0")), NotCovered);
  GeneratorSpec bx = gen("Bx[t]");
  bx.potential = parse("x*y");
  CHECK_THROWS_AS(ad_closed(GroupElement::of("D", Expr(1)), bx), NotCovered);
  // P1 is X_1
  CHECK(same(instantiate(ad_closed(GroupElement::of("D", num("1/2")), gen("P1")).element),
             sym::exp(num("-1/2")) * instantiate(gen("P1"))));
}
