#include <algorithm>
#include <cmath>
#include <random>

#include "plastsym/eval.hpp"
#include "plastsym/solutions.hpp"

namespace plastsym::sol {

namespace {

using D3 = sym::Dual<3>;

sym::Env<double> point_env(const Point3& p) {
  sym::Env<double> env;
  env.values = {{"t", p.t}, {"x", p.x}, {"y", p.y}};
  return env;
}

}  // namespace

double ResidualReport::max() const { return *std::max_element(max_abs.begin(), max_abs.end()); }

State evaluate_family(const Family& f, const Point3& p) {
  auto env = point_env(p);
  return {sym::evaluate(f.u, env), sym::evaluate(f.v, env), sym::evaluate(f.sigma, env),
          sym::evaluate(f.theta, env)};
}

ResidualReport residual(const Family& f, const ResidualOptions& o) {
  ResidualReport rep;
  rep.family = f.name;
  rep.form = f.form == Transcription::printed ? "printed" : "corrected";
  std::mt19937_64 rng(o.seed);
  auto draw = [&](std::pair<double, double> r) { return std::uniform_real_distribution<double>(r.first, r.second)(rng); };
  const double rho = f.rho;
  const int max_attempts = 50 * o.points;
  for (int attempt = 0; attempt < max_attempts && rep.points < o.points; ++attempt) {
    Point3 p{draw(o.t_range), draw(o.x_range), draw(o.y_range)};
    if (f.in_domain && !f.in_domain(p.t, p.x, p.y)) {
      ++rep.skipped;
      continue;
    }
    try {
      sym::Env<D3> env;
      env.values = {{"t", D3::seed(p.t, 0)}, {"x", D3::seed(p.x, 1)}, {"y", D3::seed(p.y, 2)}};
      const D3 u = sym::evaluate(f.u, env), v = sym::evaluate(f.v, env);
      const D3 s = sym::evaluate(f.sigma, env), th = sym::evaluate(f.theta, env);
      auto fenv = point_env(p);
      fenv.values["u"] = u.v;
      fenv.values["v"] = v.v;
      const double F1 = sym::evaluate(f.force.F1, fenv), F2 = sym::evaluate(f.force.F2, fenv);
      const double c2 = std::cos(2 * th.v), s2 = std::sin(2 * th.v);
      // gradient slots: 0 = t, 1 = x, 2 = y
      const double ra = s.g[1] - (th.g[1] * c2 + th.g[2] * s2) + rho * (F1 - u.g[0] - u.v * u.g[1] - v.v * u.g[2]);
      const double rb = s.g[2] - (th.g[1] * s2 - th.g[2] * c2) + rho * (F2 - v.g[0] - u.v * v.g[1] - v.v * v.g[2]);
      const double rc = (u.g[2] + v.g[1]) * s2 + (u.g[1] - v.g[2]) * c2;
      const double rd = u.g[1] + v.g[2];
      const double r[4] = {ra, rb, rc, rd};
      for (int k = 0; k < 4; ++k) rep.max_abs[k] = std::max(rep.max_abs[k], std::abs(r[k]));
      ++rep.points;
    } catch (const sym::DomainViolation&) {
      ++rep.skipped;
    }
  }
  return rep;
}

Assessment assess(const std::string& name, FamilyParams p, const ResidualOptions& o) {
  Assessment a;
  a.printed = residual(family(name, Transcription::printed, p), o);
  a.passed = a.printed.passed(o.gate);
  if (!a.passed && has_corrected_form(name)) {
    a.transcription_suspect = true;
    a.corrected = residual(family(name, Transcription::corrected, p), o);
    a.passed = a.corrected->passed(o.gate);
  }
  return a;
}

}  // namespace plastsym::sol
