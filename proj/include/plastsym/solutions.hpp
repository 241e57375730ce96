#pragma once

#include <array>
#include <functional>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "plastsym/prolong.hpp"

namespace plastsym::sol {

using pr::Transcription;
using sym::Expr;
using vf::VectorField;

class Unsupported : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---- invariants ---------------------------------------------------------------

struct Invariant {
  std::string name;
  Expr expr;
  bool annihilated = false;
  double max_abs = 0.0;
};

struct ReducedCoords {
  std::string subalgebra;
  std::vector<VectorField> generators;
  std::vector<Invariant> invariants;
  bool all_annihilated() const;
  const Expr& operator[](const std::string& name) const;
};

struct InvariantOptions {
  Expr V = Expr(0);  // potential in S = sigma + rho V
  Expr kappa1 = Expr::param("kappa1");
  Expr kappa2 = Expr::param("kappa2");
  sym::ZeroTestOptions zero;
};

// "DL" for <D, L>, "K" for <K> with kappa0 = 0.
ReducedCoords invariants_of(const std::string& subalgebra, const InvariantOptions& o = {});

// Residuals of X-invariance of the graph (u, v, sigma, theta) = sol(t, x, y):
// phi^a - xi^i d_i sol^a, one per dependent variable.
std::array<Expr, 4> invariance_residuals(const VectorField& X, const std::array<Expr, 4>& sol);

// u, v, sigma, theta of the <K> ansatz from functions R, T1, T2, S of the
// invariants. The printed form divides the phase of v by kappa2.
std::array<Expr, 4> k_ansatz(const Expr& R, const Expr& T1, const Expr& T2, const Expr& S,
                             const Expr& kappa1, const Expr& kappa2, Transcription form);

// u, v, sigma, theta of the <D, L> ansatz from R, T1, T2, S of xi.
std::array<Expr, 4> dl_ansatz(const Expr& R, const Expr& T1, const Expr& T2, const Expr& S, const Expr& rho,
                              const Expr& V);

// ---- first integral of the incompressibility reduction ----------------------

struct FirstIntegralReport {
  double value = 0.0;           // (1/2) xi R (1 + cos(2T1 - 2T2)) at the first sample
  double spread = 0.0;          // max deviation from value
  double max_derivative = 0.0;  // max |d/dxi|
  int samples = 0;
  bool constant = false;
};

// R, T1, T2 are expressions in the variable xi.
FirstIntegralReport first_integral_check(const Expr& R, const Expr& T1, const Expr& T2, double lo = 0.5,
                                         double hi = 2.0, int samples = 64, double tol = 1e-10);

// ---- families ---------------------------------------------------------------

struct FamilyParams {
  double a1 = 1, a2 = 1, a3 = 0;
  double b1 = 0.4, b2 = 0.1, b3 = 0;
  double kappa1 = 1, kappa2 = 2;
  double rho = 1;
  Expr V = Expr(0);                        // potential, in t, x, y
  Expr s = Expr(0);                        // s(t) of the R17 sigma
  std::optional<Expr> h;                   // free friction function, body in s
  // RF9 uses its own default constants unless overridden
  std::optional<double> rf_a2, rf_a3;
};

struct Family {
  std::string name;  // R10, R16, R17, RF9
  Transcription form = Transcription::printed;
  FamilyParams params;
  Expr u, v, sigma, theta;
  pr::Force force;
  double rho = 1;
  std::string domain;
  std::function<bool(double t, double x, double y)> in_domain;
  std::string params_label() const;
};

const std::vector<std::string>& family_names();
Family family(const std::string& name, Transcription form = Transcription::printed, FamilyParams p = {});
bool has_corrected_form(const std::string& name);

struct Point3 {
  double t, x, y;
};

struct State {
  double u, v, sigma, theta;
};
State evaluate_family(const Family& f, const Point3& p);
std::pair<double, double> velocity(const Family& f, double t, double x, double y);

struct ResidualOptions {
  int points = 100;
  std::uint64_t seed = 0x5eed2024ULL;
  double gate = 1e-9;
  std::pair<double, double> t_range{0.5, 2.0}, x_range{0.3, 2.0}, y_range{-1.5, 1.5};
};

struct ResidualReport {
  std::string family;
  std::string form;
  std::array<double, 4> max_abs{};  // (a), (b), (c), (d)
  int points = 0;
  int skipped = 0;
  double max() const;
  bool passed(double gate) const { return points > 0 && max() < gate; }
};

// First derivatives by dual numbers; integral terms differentiate through
// their upper limit.
ResidualReport residual(const Family& f, const ResidualOptions& o = {});

struct Assessment {
  ResidualReport printed;
  std::optional<ResidualReport> corrected;
  bool transcription_suspect = false;
  bool passed = false;  // printed, or else corrected, meets the gate
};

Assessment assess(const std::string& name, FamilyParams p = {}, const ResidualOptions& o = {});

// ---- flow field -------------------------------------------------------------

struct Grid {
  double x0 = -2, x1 = 2, y0 = -2, y1 = 2;
  int nx = 21, ny = 21;
};

// "-2:2:21" for one axis
std::tuple<double, double, int> parse_axis(const std::string& spec);

struct FlowSample {
  double x, y, u, v;
};

struct FlowField {
  std::string family;
  std::string comment;
  double t = 0;
  std::vector<FlowSample> samples;
  int skipped = 0;
};

FlowField flow_field(const Family& f, const Grid& g, double t);
std::string to_csv(const FlowField& ff);
std::string to_svg(const FlowField& ff, const Grid& g);
// |v_tangential| / |v_radial| at (x, y)
double dominance_ratio(const Family& f, double t, double x, double y);

}  // namespace plastsym::sol
