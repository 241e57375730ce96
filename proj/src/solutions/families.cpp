#include <cmath>
#include <sstream>

#include "plastsym/solutions.hpp"

namespace plastsym::sol {

namespace {

using sym::Rational;

Expr var(const char* n) { return Expr::var(n); }
Expr C(double d) { return Expr::from_double(d); }
const Expr kHalf = Expr(Rational(1, 2));

// |w| < 1 with a margin, for acos and for the square roots under the integrals
bool inside_unit(double w) { return std::abs(w) < 0.999; }

std::string fmt_num(double d) {
  std::ostringstream os;
  os.precision(6);
  os << d;
  return os.str();
}

Family r10(const FamilyParams& p) {
  const Expr t = var("t"), x = var("x"), y = var("y");
  const Expr r2 = x * x + y * y, rho = C(p.rho), sa1 = sym::sqrt(C(p.a1));
  Family f;
  f.u = sa1 * t * x / r2;
  f.v = sa1 * t * y / r2;
  f.theta = sym::pi() / Expr(4) + sym::atan(y / x);
  f.sigma = (rho * sa1 + Expr(1)) * sym::log(sym::sqrt(r2) / t) + C(p.a1) * rho / Expr(2) * t * t / r2 -
            rho * p.V + C(p.a3);
  f.force = pr::monogenic(p.V);
  f.domain = "x > 0";
  f.in_domain = [](double, double x, double) { return x > 0; };
  return f;
}

Family r16(const FamilyParams& p, Transcription form) {
  const Expr t = var("t"), x = var("x"), y = var("y");
  const Expr r2 = x * x + y * y, xi = r2 / (t * t), rho = C(p.rho), b1 = C(p.b1), b2 = C(p.b2);
  const Expr eta = var("eta");
  Family f;
  f.u = -(b1 * y / t);
  f.v = b1 * x / t;
  const Expr num = sym::pow(rho * b1 * eta, 2) + Expr(2) * (rho * b1 * b2 - Expr(1));
  if (form == Transcription::printed) {
    Expr arg = kHalf * (rho * b1 * r2 + Expr(2) * b1 * sym::pow(t, 4)) / (t * t * r2);
    f.theta = sym::pi() / Expr(2) - kHalf * sym::acos(arg) + sym::atan(y / x);
    Expr integrand = num / sym::sqrt(Expr(4) * eta * eta - sym::pow(rho * b1 * eta * eta + Expr(2) * b2 * b2, 2));
    f.sigma = -(rho * p.V) - kHalf * rho * b1 * b1 * xi + Expr::quadrature(integrand, "eta", Rational(1), xi) +
              C(p.b3);
  } else {
    Expr arg = (rho * b1 * xi * xi + Expr(2) * b2) / (Expr(2) * xi);
    f.theta = sym::pi() / Expr(2) - kHalf * sym::acos(arg) + sym::atan(y / x);
    Expr integrand = num / sym::sqrt(Expr(4) * eta * eta - sym::pow(rho * b1 * eta * eta + Expr(2) * b2, 2));
    f.sigma = -(rho * p.V) - kHalf * rho * b1 * b1 * xi -
              kHalf * Expr::quadrature(integrand, "eta", Rational(1), xi) + C(p.b3);
  }
  f.force = pr::monogenic(p.V);
  f.domain = "x > 0, |(rho b1 xi^2 + 2 b2) / (2 xi)| < 1 with xi = (x^2+y^2)/t^2";
  const double rb = p.rho * p.b1, b2d = p.b2;
  f.in_domain = [rb, b2d](double t, double x, double y) {
    double xi = (x * x + y * y) / (t * t);
    return x > 0 && inside_unit((rb * xi * xi + 2 * b2d) / (2 * xi));
  };
  return f;
}

Family r17(const FamilyParams& p, Transcription form) {
  const Expr t = var("t"), x = var("x"), y = var("y");
  const Expr r2 = x * x + y * y, rho = C(p.rho), a1 = C(p.a1), a2 = C(p.a2), sa1 = sym::sqrt(a1);
  Family f;
  f.u = sa1 * t * x / r2 - a2 * y / t;
  f.v = sa1 * t * y / r2 + a2 * x / t;
  f.theta = -(kHalf * sym::atan(kHalf * (x * x - y * y) / (x * y)));
  const Expr common = -(rho * p.V) - kHalf * rho * a2 * a2 * r2 / (t * t) + p.s;
  pr::Force base = pr::monogenic(p.V);
  if (form == Transcription::printed) {
    f.sigma = common + kHalf * (a1 * rho - Expr(1)) * sym::log(r2) - Expr(2) * rho * a1 * a2 * sym::atan(y / x) +
              kHalf * rho * a1 * a1 * t * t / r2;
    f.force = {"R17-printed", base.F1 + a2 * y / t, base.F2 - a2 * x / t};
  } else {
    f.sigma = common + kHalf * (rho * sa1 - Expr(1)) * sym::log(r2) + Expr(2) * rho * sa1 * a2 * sym::atan(y / x) +
              kHalf * rho * a1 * t * t / r2;
    f.force = {"R17-corrected", base.F1 + a2 * y / (t * t), base.F2 - a2 * x / (t * t)};
  }
  // theta jumps by pi/2 across xy = 0, which flips cos(2 theta)
  f.domain = "x > 0, xy > 0";
  f.in_domain = [](double, double x, double y) { return x > 0 && x * y > 1e-3; };
  return f;
}

Family rf9(const FamilyParams& p, Transcription form) {
  const Expr t = var("t"), x = var("x"), y = var("y"), u = var("u"), v = var("v");
  const Expr r2 = x * x + y * y, r = r2 / (t * t), rho = C(p.rho);
  const Expr k1 = C(p.kappa1), k2 = C(p.kappa2);
  const double a2d = p.rf_a2.value_or(0.1), a3d = p.rf_a3.value_or(0.1);
  const Expr a1 = C(p.a1), a2 = C(a2d), a3 = C(a3d);
  const Expr s = var("s");
  const Expr h_free = sym::substitute_params(p.h.value_or(s * s / Expr(3) + s), {{"s", s}});
  const Expr h_rel = Expr(2) * k2 / k1 * (h_free + s * sym::diff(h_free, "s"));
  // the printed form leaves h2 free and ties h1 to it; the reduced system
  // needs the roles the other way round
  const Expr h1 = form == Transcription::printed ? h_rel : h_free;
  const Expr h2 = form == Transcription::printed ? h_free : h_rel;
  auto at = [&](const Expr& body, const Expr& arg) { return sym::substitute(body, {{"s", arg}}); };

  Family f;
  f.u = -(y / t);
  f.v = x / t;
  auto w_of = [&](const Expr& q) { return rho / Expr(2) * q - a2 / q - a3; };
  const Expr w = w_of(r);
  const Expr phi = sym::atan(y / x);
  f.theta = sym::pi() / Expr(2) + phi - kHalf * sym::acos(w);
  const Expr E = sym::exp(k1 / k2 * (phi + sym::pi() / Expr(2)));
  const Expr eta = var("eta");
  const Expr integrand = sym::sqrt(Expr(1) - sym::pow(w_of(eta), 2)) / (Expr(2) * eta);
  f.sigma = -(rho * k2 / k1 * r2 / t * at(h_free, r) * E) - rho / Expr(2) * r +
            Expr::quadrature(integrand, "eta", Rational(1), r) + a1 + kHalf * sym::sqrt(Expr(1) - w * w) -
            a3 * (k2 / k1 * sym::log(t) + phi);
  const Expr q = u * u + v * v;
  const Expr Ev = sym::exp(k1 / k2 * sym::atan2(v, u));
  f.force = {"friction", (u * at(h1, q) + v * at(h2, q)) * Ev, (v * at(h1, q) - u * at(h2, q)) * Ev};
  f.domain = "x > 0, |rho r/2 - a2/r - a3| < 1 with r = (x^2+y^2)/t^2";
  const double rh = p.rho;
  f.in_domain = [rh, a2d, a3d](double t, double x, double y) {
    double rr = (x * x + y * y) / (t * t);
    return x > 0 && inside_unit(rh / 2 * rr - a2d / rr - a3d);
  };
  return f;
}

}  // namespace

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"R10", "R16", "R17", "RF9"};
  return names;
}

bool has_corrected_form(const std::string& name) { return name == "R16" || name == "R17" || name == "RF9"; }

Family family(const std::string& name, Transcription form, FamilyParams p) {
  Family f;
  if (name == "R10") {
    f = r10(p);
    form = Transcription::printed;
  } else if (name == "R16") {
    f = r16(p, form);
  } else if (name == "R17") {
    f = r17(p, form);
  } else if (name == "RF9") {
    f = rf9(p, form);
  } else {
    throw Unsupported("unknown solution family " + name);
  }
  f.name = name;
  f.form = form;
  f.params = p;
  f.rho = p.rho;
  return f;
}

std::string Family::params_label() const {
  std::ostringstream os;
  os << "rho=" << fmt_num(params.rho);
  if (name == "R10") {
    os << " a1=" << fmt_num(params.a1) << " a3=" << fmt_num(params.a3);
  } else if (name == "R16") {
    os << " b1=" << fmt_num(params.b1) << " b2=" << fmt_num(params.b2) << " b3=" << fmt_num(params.b3);
  } else if (name == "R17") {
    os << " a1=" << fmt_num(params.a1) << " a2=" << fmt_num(params.a2) << " s=" << params.s.str();
  } else if (name == "RF9") {
    os << " kappa1=" << fmt_num(params.kappa1) << " kappa2=" << fmt_num(params.kappa2)
       << " a1=" << fmt_num(params.a1) << " a2=" << fmt_num(params.rf_a2.value_or(0.1))
       << " a3=" << fmt_num(params.rf_a3.value_or(0.1));
  }
  if (!params.V.is_zero()) os << " V=" << params.V.str();
  return os.str();
}

}  // namespace plastsym::sol
