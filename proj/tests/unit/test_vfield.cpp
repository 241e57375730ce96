#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "plastsym/vfield.hpp"

using namespace plastsym;
using namespace plastsym::vf;
using sym::parse;

namespace {

GeneratorSpec gen(const char* s) { return parse_generator(s); }

bool fields_equal(const VectorField& a, const VectorField& b) {
  return field_is_zero((a - b).simplified()).zero;
}

Expr random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_int_distribution<long> coef(-3, 3);
  Expr p;
  for (int k = 0; k <= degree; ++k) p = p + Expr(coef(rng)) * sym::pow(Expr::var("t"), k);
  return p;
}

std::string fixture(const char* name) {
  std::ifstream in(std::string(PLASTSYM_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("instantiation matches the generator formulas") {
  VectorField xt = instantiate(gen("X[t]"));
  CHECK(xt.c[X] == Expr::var("t"));
  CHECK(xt.c[U].is_one());
  CHECK(xt.c[SIGMA].is_zero());
  for (int i : {T, Y, V, THETA}) CHECK(xt.c[i].is_zero());

  VectorField s1 = instantiate(gen("S[1]"));
  CHECK(s1.c[SIGMA].is_one());

  GeneratorSpec l = gen("L");
  l.potential = parse("x*y^2 + t*x");
  VectorField lv = instantiate(l);
  CHECK(sym::is_zero(lv.c[SIGMA] - parse("rho*(x*(2*x*y) - y*(y^2 + t))")).zero);
  CHECK(lv.c[THETA] == Expr(-1));

  CHECK_THROWS_AS(instantiate(GeneratorSpec::of(Kind::X)), MissingSlot);
  CHECK_THROWS_AS(parse_generator("X"), MissingSlot);
  CHECK_THROWS_AS(parse_generator("Q"), sym::ParseError);
  CHECK_THROWS_AS(instantiate(gen("Bx[t^2]")), MissingSlot);
}

TEST_CASE("Bx and By reduce to X and Y without a force") {
  GeneratorSpec bx = gen("Bx[t^2 + 3*t]");
  bx.potential = Expr();
  GeneratorSpec by = gen("By[f(t)]");
  by.potential = Expr();
  CHECK(fields_equal(instantiate(bx), instantiate(gen("X[t^2 + 3*t]"))));
  CHECK(fields_equal(instantiate(by), instantiate(gen("Y[f(t)]"))));
}

TEST_CASE("bracket examples") {
  CHECK(fields_equal(bracket(instantiate(gen("P0")), instantiate(gen("D"))), instantiate(gen("P0"))));
  CHECK(fields_equal(bracket(instantiate(gen("L")), instantiate(gen("X[f(t)]"))),
                     instantiate(gen("Y[f(t)]"))));
  CHECK(fields_equal(bracket(instantiate(gen("X[t^2]")), instantiate(gen("Y[t^3]"))), VectorField{}));
  // same-direction slots close onto S
  CHECK(fields_equal(bracket(instantiate(gen("X[t]")), instantiate(gen("X[t^2]"))),
                     instantiate(gen("S[2*rho*t]"))));
  CHECK(fields_equal(bracket(instantiate(gen("D")), instantiate(gen("X[t]"))), VectorField{}));
  CHECK(fields_equal(bracket(instantiate(gen("D")), instantiate(gen("S[t^2]"))),
                     instantiate(gen("S[2*t^2]"))));
  VectorField l = instantiate(gen("L"));
  CHECK(fields_equal(bracket(l, l), VectorField{}));
}

TEST_CASE("default commutation table verifies") {
  Table table = default_table();
  TableReport rep = check_table(table);
  for (const auto& r : rep.results) {
    INFO(r.name << " " << r.failing_instance << " " << r.component);
    CHECK(r.passed);
    CHECK(r.instances >= 1);
  }
  CHECK(rep.listed_count() == 9);
  CHECK(rep.listed_passed() == 9);

  TableOptions small;
  small.degree = 2;
  CHECK(check_table(table, small).all_passed());
}

TEST_CASE("table json round trip and corrupted fixture") {
  Table table = default_table();
  Table back = table_from_json(table_to_json(table));
  REQUIRE(back.relations.size() == table.relations.size());
  CHECK(check_table(back).all_passed());

  Table bad = table_from_json(fixture("corrupted_table.json"));
  TableReport rep = check_table(bad);
  CHECK_FALSE(rep.all_passed());
  CHECK(rep.results[0].passed);
  CHECK_FALSE(rep.results[1].passed);
  REQUIRE(rep.results[1].witness);
  CHECK_FALSE(rep.results[2].passed);
}

TEST_CASE("antisymmetry, bilinearity and Jacobi on random polynomial slots") {
  std::mt19937_64 rng(23);
  std::vector<VectorField> basis{
      instantiate(gen("P0")),
      instantiate(gen("D")),
      instantiate(gen("L")),
      instantiate(GeneratorSpec::of(Kind::X, random_poly(rng, 4))),
      instantiate(GeneratorSpec::of(Kind::X, random_poly(rng, 4))),
      instantiate(GeneratorSpec::of(Kind::Y, random_poly(rng, 4))),
      instantiate(GeneratorSpec::of(Kind::Y, random_poly(rng, 4))),
      instantiate(GeneratorSpec::of(Kind::S, random_poly(rng, 4))),
  };
  int pairs = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      CHECK(fields_equal(bracket(basis[i], basis[j]) + bracket(basis[j], basis[i]), VectorField{}));
      ++pairs;
    }
  }
  CHECK(pairs == 28);

  Expr a(sym::Rational(3, 2)), b(-2);
  CHECK(fields_equal(bracket(a * basis[3] + b * basis[1], basis[2]),
                     a * bracket(basis[3], basis[2]) + b * bracket(basis[1], basis[2])));

  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  for (int n = 0; n < 20; ++n) {
    const auto& A = basis[pick(rng)];
    const auto& B = basis[pick(rng)];
    const auto& C = basis[pick(rng)];
    VectorField jac = bracket(A, bracket(B, C)) + bracket(B, bracket(C, A)) + bracket(C, bracket(A, B));
    CHECK(fields_equal(jac, VectorField{}));
  }
}
