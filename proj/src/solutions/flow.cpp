#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "plastsym/eval.hpp"
#include "plastsym/solutions.hpp"

namespace plastsym::sol {

namespace {

double axis_point(double a, double b, int n, int i) { return n == 1 ? a : a + (b - a) * i / (n - 1); }

}  // namespace

std::pair<double, double> velocity(const Family& f, double t, double x, double y) {
  sym::Env<double> env;
  env.values = {{"t", t}, {"x", x}, {"y", y}};
  return {sym::evaluate(f.u, env), sym::evaluate(f.v, env)};
}

std::tuple<double, double, int> parse_axis(const std::string& spec) {
  std::istringstream is(spec);
  double a = 0, b = 0;
  int n = 0;
  char c1 = 0, c2 = 0;
  if (!(is >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1 || !(is >> std::ws).eof()) {
    throw std::invalid_argument("axis must look like lo:hi:count, got '" + spec + "'");
  }
  return {a, b, n};
}

FlowField flow_field(const Family& f, const Grid& g, double t) {
  FlowField ff;
  ff.family = f.name;
  ff.t = t;
  std::ostringstream c;
  c << "# family=" << f.name << " form=" << (f.form == Transcription::printed ? "printed" : "corrected")
    << " t=" << t << " " << f.params_label();
  ff.comment = c.str();
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      double x = axis_point(g.x0, g.x1, g.nx, i), y = axis_point(g.y0, g.y1, g.ny, j);
      try {
        auto [u, v] = velocity(f, t, x, y);
        ff.samples.push_back({x, y, u, v});
      } catch (const sym::DomainViolation&) {
        ++ff.skipped;  // the origin, typically
      }
    }
  }
  return ff;
}

std::string to_csv(const FlowField& ff) {
  std::ostringstream os;
  os << ff.comment << "\n"
     << "x,y,u,v\n"
     << std::setprecision(17);
  for (const auto& s : ff.samples) os << s.x << "," << s.y << "," << s.u << "," << s.v << "\n";
  return os.str();
}

std::string to_svg(const FlowField& ff, const Grid& g) {
  const double W = 480, H = 480, pad = 20;
  auto sx = [&](double x) { return pad + (x - g.x0) / (g.x1 - g.x0) * (W - 2 * pad); };
  auto sy = [&](double y) { return H - pad - (y - g.y0) / (g.y1 - g.y0) * (H - 2 * pad); };
  // arrows share one length: direction only, as in a quiver plot of unit vectors
  const double cell = std::min((W - 2 * pad) / std::max(1, g.nx - 1), (H - 2 * pad) / std::max(1, g.ny - 1));
  const double len = 0.8 * cell;
  std::ostringstream os;
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << " " << H << "\">\n";
  os << "<!-- " << ff.comment.substr(2) << " -->\n";
  os << "<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" orient=\"auto\">"
        "<path d=\"M0,0 L6,3 L0,6 z\" fill=\"black\"/></marker></defs>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& s : ff.samples) {
    double m = std::hypot(s.u, s.v);
    if (m == 0) continue;
    double cx = sx(s.x), cy = sy(s.y);
    double dx = s.u / m * len / 2, dy = -s.v / m * len / 2;
    os << "<line x1=\"" << cx - dx << "\" y1=\"" << cy - dy << "\" x2=\"" << cx + dx << "\" y2=\"" << cy + dy
       << "\" stroke=\"black\" stroke-width=\"1\" marker-end=\"url(#head)\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

double dominance_ratio(const Family& f, double t, double x, double y) {
  auto [u, v] = velocity(f, t, x, y);
  double r = std::hypot(x, y);
  double tang = (-y * u + x * v) / r, rad = (x * u + y * v) / r;
  if (rad == 0) return std::numeric_limits<double>::infinity();
  return std::abs(tang) / std::abs(rad);
}

}  // namespace plastsym::sol
