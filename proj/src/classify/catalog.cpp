#include "plastsym/classify.hpp"

namespace plastsym::cls {

using sym::Rational;
using vf::GeneratorSpec;
using vf::Kind;

namespace {

const Expr t = Expr::var("t");

AlgebraElement g(Kind k, std::optional<Expr> slot = std::nullopt, Expr coef = Expr(1)) {
  return AlgebraElement{{std::move(coef), GeneratorSpec::of(k, std::move(slot))}};
}

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string q(const Rational& r) { return r.to_string(); }

std::vector<GroupElement> group_of(const std::string& gens) {
  std::vector<GroupElement> out;
  for (char c : gens) {
    if (c == 'L') out.push_back(GroupElement::of("L", Expr(Rational(7, 10))));
    if (c == 'D') out.push_back(GroupElement::of("D", Expr(Rational(2, 5))));
    if (c == 'P') out.push_back(GroupElement::of("P0", Expr(Rational(3, 5))));
  }
  return out;
}

Subalgebra make(std::string label, std::vector<AlgebraElement> basis, std::vector<int> ideal = {}) {
  Subalgebra s;
  s.label = std::move(label);
  s.basis = std::move(basis);
  s.ideal = std::move(ideal);
  return s;
}

Subalgebra with_normalizer(Subalgebra s, const std::string& gens, std::string label) {
  s.normalizer = group_of(gens);
  s.normalizer_label = std::move(label);
  return s;
}

AlgebraElement la_d(const Rational& a) { return g(Kind::L) + g(Kind::D, std::nullopt, Expr(a)); }

// t^b cos(ln t / a), t^b sin(ln t / a)
std::pair<Expr, Expr> log_spiral(const Rational& a, const Rational& b) {
  Expr ph = sym::log(t) / Expr(a);
  Expr tb = sym::pow(t, Expr(b));
  return {tb * sym::cos(ph), tb * sym::sin(ph)};
}

std::pair<Expr, Expr> exp_spiral(const Rational& a) {
  Expr e = sym::exp(Expr(a) * t);
  return {e * sym::sin(t), e * sym::cos(t)};
}

// h = t^m1 + mu (t^m2 + t^(m2+1) hat)
Expr head_form(int m1, int m2, int mu, const Expr& hat) {
  return sym::pow(t, m1) + Expr(mu) * (sym::pow(t, m2) + sym::pow(t, m2 + 1) * hat);
}

struct HeadCase {
  int m1, m2, mu;
};
const std::vector<HeadCase> kHeads{{0, 1, 1}, {1, 2, -1}, {2, 3, 0}, {1, 3, 1}};

std::string head_label(const HeadCase& h) {
  return "m1=" + std::to_string(h.m1) + " m2=" + std::to_string(h.m2) + " mu=" + std::to_string(h.mu);
}

void factor_algebras(std::vector<Subalgebra>& out, const CatalogGrid& grid) {
  out.push_back(with_normalizer(make("A:<L>", {g(Kind::L)}), "LDP", "exp A"));
  out.push_back(with_normalizer(make("A:<D>", {g(Kind::D)}), "LD", "exp <L,D>"));
  out.push_back(with_normalizer(make("A:<P0>", {g(Kind::P0)}), "LDP", "exp A"));
  for (const auto& a : grid.a) {
    out.push_back(with_normalizer(make("A:<L+aD> a=" + q(a), {la_d(a)}), "LD", "exp <L,D>"));
  }
  out.push_back(with_normalizer(make("A:<L+P0>", {g(Kind::L) + g(Kind::P0)}), "LP", "exp <L,P0>"));
  out.push_back(with_normalizer(make("A:<L,D>", {g(Kind::L), g(Kind::D)}), "LDP", "exp A"));
  out.push_back(with_normalizer(make("A:<L,P0>", {g(Kind::L), g(Kind::P0)}), "LDP", "exp A"));
  std::vector<Rational> with_zero = grid.a;
  with_zero.insert(with_zero.begin(), Rational(0));
  for (const auto& a : with_zero) {
    out.push_back(with_normalizer(
        make("A:<D+aL,P0> a=" + q(a), {g(Kind::D) + g(Kind::L, std::nullopt, Expr(a)), g(Kind::P0)}), "LDP",
        "exp A"));
  }
  out.push_back(with_normalizer(make("A:<P0,D,L>", {g(Kind::P0), g(Kind::D), g(Kind::L)}), "LDP", "exp A"));
}

void split_algebras(std::vector<Subalgebra>& out, const CatalogGrid& grid) {
  for (const auto& a : grid.a) {
    out.push_back(with_normalizer(
        make("A+B:<D,X_{t^a}> a=" + q(a), {g(Kind::D), g(Kind::X, sym::pow(t, Expr(a)))}, {1}), "D",
        "exp <D>"));
  }
  for (int sign : {1, -1}) {
    out.push_back(with_normalizer(make(std::string("A+B:<P0,X_{e^") + (sign > 0 ? "t" : "-t") + "}>",
                                       {g(Kind::P0), g(Kind::X, sym::exp(Expr(sign) * t))}, {1}),
                                  "P", "exp <P0>"));
  }
  const GroupElement half_turn = GroupElement::of("L", sym::pi());
  for (const auto& a : grid.a) {
    for (const auto& b : grid.b) {
      auto [c, s] = log_spiral(a, b);
      Subalgebra e = make("A+B:<L+aD,X_{t^b cos(ln t/a)}-Y_{t^b sin(ln t/a)}> a=" + q(a) + " b=" + q(b),
                          {la_d(a), g(Kind::X, c) + g(Kind::Y, s, Expr(-1))}, {1});
      e.normalizer = {half_turn};
      e.normalizer_label = "exp(pi L)";
      out.push_back(std::move(e));
    }
  }
  for (const auto& a : grid.a) {
    auto [s, c] = exp_spiral(a);
    Subalgebra e = make("A+B:<L+P0,X_{e^{at} sin t}+Y_{e^{at} cos t}> a=" + q(a),
                        {g(Kind::L) + g(Kind::P0), g(Kind::X, s) + g(Kind::Y, c)}, {1});
    e.normalizer = {half_turn};
    e.normalizer_label = "exp(pi L)";
    out.push_back(std::move(e));
  }
}

void s_extensions(std::vector<Subalgebra>& out, const CatalogGrid& grid) {
  const Expr hat_h = sym::cos(t), other = sym::sin(t) + 2;
  for (const auto& h : kHeads) {
    Expr hs = head_form(h.m1, h.m2, h.mu, hat_h);
    out.push_back(make("S:<S_h> " + head_label(h), {g(Kind::S, hs)}));
    out.push_back(make("S:<S_1,S_h> " + head_label(h), {g(Kind::S, Expr(1)), g(Kind::S, hs)}));
    out.push_back(make("S:<S_h,S_g> " + head_label(h), {g(Kind::S, hs), g(Kind::S, other)}));
    out.push_back(make("S:<L,S_h> " + head_label(h), {g(Kind::L), g(Kind::S, hs)}, {1}));
  }
  // f = t^n1 + eps t^n2 + t^(n2+1) ghat
  for (int m1 : {0, 1, 2}) {
    for (int eps : {-1, 0, 1}) {
      Expr f = sym::pow(t, 1) + Expr(eps) * sym::pow(t, 3) + sym::pow(t, 4) * sym::exp(t);
      out.push_back(make("S:<S_{t^m1},S_f> m1=" + std::to_string(m1) + " n1=1 n2=3 eps=" + std::to_string(eps),
                         {g(Kind::S, sym::pow(t, m1)), g(Kind::S, f)}));
    }
  }
  out.push_back(make("S:<D,S_1>", {g(Kind::D), g(Kind::S, Expr(1))}, {1}));
  out.push_back(make("S:<P0,S_1>", {g(Kind::P0), g(Kind::S, Expr(1))}, {1}));
  out.push_back(make("S:<L+P0,S_1>", {g(Kind::L) + g(Kind::P0), g(Kind::S, Expr(1))}, {1}));
  for (int sign : {1, -1}) {
    std::string e = sign > 0 ? "t" : "-t";
    out.push_back(make("S:<P0,S_{e^" + e + "}>", {g(Kind::P0), g(Kind::S, sym::exp(Expr(sign) * t))}, {1}));
    out.push_back(make("S:<L+P0,S_{e^" + e + "}>",
                       {g(Kind::L) + g(Kind::P0), g(Kind::S, sym::exp(Expr(sign) * t))}, {1}));
  }
  for (const auto& a : grid.a) {
    out.push_back(make("S:<D,S_{t^a}> a=" + q(a), {g(Kind::D), g(Kind::S, sym::pow(t, Expr(a)))}, {1}));
    out.push_back(make("S:<L+aD,S_1> a=" + q(a), {la_d(a), g(Kind::S, Expr(1))}, {1}));
    out.push_back(make("S:<L+aD,S_{t^a}> a=" + q(a), {la_d(a), g(Kind::S, sym::pow(t, Expr(a)))}, {1}));
  }
  // the S part scales like the B part: exponent b - 1 for L+aD, e^{at} for L+P0
  for (const auto& a : grid.a) {
    for (const auto& b : grid.b) {
      for (const auto& c : grid.c) {
        auto [x, y] = log_spiral(a, b);
        out.push_back(make("S:<L+aD,X_{t^b cos(ln t/a)}-Y_{t^b sin(ln t/a)}+cS_{t^(b-1)}> a=" + q(a) +
                               " b=" + q(b) + " c=" + q(c),
                           {la_d(a), g(Kind::X, x) + g(Kind::Y, y, Expr(-1)) +
                                         g(Kind::S, sym::pow(t, Expr(b - 1)), Expr(c))},
                           {1}));
      }
    }
    for (const auto& c : grid.c) {
      auto [x, y] = exp_spiral(a);
      out.push_back(make("S:<L+P0,X_{e^{at} sin t}+Y_{e^{at} cos t}+cS_{e^{at}}> a=" + q(a) + " c=" + q(c),
                         {g(Kind::L) + g(Kind::P0),
                          g(Kind::X, x) + g(Kind::Y, y) + g(Kind::S, sym::exp(Expr(a) * t), Expr(c))},
                         {1}));
    }
  }
}

void b_planes(std::vector<Subalgebra>& out) {
  auto plane = [&](std::string label, Expr f1, Expr g1, Expr f2, Expr g2) {
    Subalgebra s = make("B2:" + std::move(label), {b_element(f1, g1), b_element(f2, g2)});
    s.modulo_s = true;
    out.push_back(std::move(s));
  };
  for (const auto& h : kHeads) {
    if (h.m1 >= h.m2) continue;
    plane("<X_f1+Y_g1,X_f2+Y_g2> f1 head " + head_label(h), head_form(h.m1, h.m2, h.mu, sym::cos(t)), t + 2,
          sym::exp(t), t * t);
    plane("<X_1+Y_g1,X_f2+Y_g2> g1 head " + head_label(h), Expr(1),
          head_form(h.m1 + 1, h.m2 + 1, h.mu, sym::sin(t)), sym::pow(t, 3), sym::exp(-t));
    plane("<X_1,X_f2+Y_g2> f2 head " + head_label(h), Expr(1), Expr(0),
          head_form(h.m1, h.m2, h.mu, sym::cos(t)), 1 + t * t);
    plane("<X_1,X_1+Y_g2> g2 head " + head_label(h), Expr(1), Expr(0), Expr(1),
          head_form(h.m1 + 1, h.m2 + 1, h.mu, sym::exp(t)));
  }
}

}  // namespace

AlgebraElement b_element(const Expr& f, const Expr& gg) {
  AlgebraElement e;
  if (!f.is_zero()) e.push_back({Expr(1), GeneratorSpec::of(Kind::X, f)});
  if (!gg.is_zero()) e.push_back({Expr(1), GeneratorSpec::of(Kind::Y, gg)});
  return e;
}

std::vector<Subalgebra> catalog(const CatalogGrid& grid) {
  std::vector<Subalgebra> out;
  factor_algebras(out, grid);
  split_algebras(out, grid);
  s_extensions(out, grid);
  b_planes(out);
  return out;
}

std::vector<Subalgebra> printed_readings(const CatalogGrid& grid) {
  std::vector<Subalgebra> out;
  for (const auto& a : grid.a) {
    for (const auto& b : grid.b) {
      for (const auto& c : grid.c) {
        if (c.is_zero()) continue;
        auto [x, y] = log_spiral(a, b);
        Subalgebra s = make("printed:<L+aD,X_{t^b cos(ln t/a)}-Y_{t^b sin(ln t/a)}+cS_{t^b}> a=" + q(a) +
                                " b=" + q(b) + " c=" + q(c),
                            {la_d(a), g(Kind::X, x) + g(Kind::Y, y, Expr(-1)) +
                                          g(Kind::S, sym::pow(t, Expr(b)), Expr(c))},
                            {1});
        s.printed_reading = true;
        out.push_back(std::move(s));
      }
    }
    for (const auto& c : grid.c) {
      auto [x, y] = exp_spiral(a);
      Subalgebra s = make("printed:<L+aD,X_{e^{at} sin t}+Y_{e^{at} cos t}+cS_{e^{at}}> a=" + q(a) + " c=" + q(c),
                          {la_d(a), g(Kind::X, x) + g(Kind::Y, y) + g(Kind::S, sym::exp(Expr(a) * t), Expr(c))},
                          {1});
      s.printed_reading = true;
      out.push_back(std::move(s));
    }
    // function-times-field reading of the split rows: cos(ln t/a) X_{t^b} - sin(ln t/a) Y_{t^b}
    for (const auto& b : grid.b) {
      Expr ph = sym::log(t) / Expr(a);
      Expr tb = sym::pow(t, Expr(b));
      Subalgebra s;
      s.label = "printed:<L+aD,cos(ln t/a) X_{t^b}-sin(ln t/a) Y_{t^b}> a=" + q(a) + " b=" + q(b);
      s.raw_fields = {vf::instantiate(la_d(a)),
                      (sym::cos(ph) * vf::instantiate(g(Kind::X, tb)) -
                       sym::sin(ph) * vf::instantiate(g(Kind::Y, tb)))
                          .simplified()};
      s.ideal = {1};
      s.printed_reading = true;
      out.push_back(std::move(s));
    }
    Expr e = sym::exp(Expr(a) * t);
    Subalgebra s;
    s.label = "printed:<L+P0,sin t X_{e^{at}}+cos t Y_{e^{at}}> a=" + q(a);
    s.raw_fields = {vf::instantiate(g(Kind::L) + g(Kind::P0)),
                    (sym::sin(t) * vf::instantiate(g(Kind::X, e)) + sym::cos(t) * vf::instantiate(g(Kind::Y, e)))
                        .simplified()};
    s.ideal = {1};
    s.printed_reading = true;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace plastsym::cls
