#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plastsym/vfield.hpp"
#include "plastsym/zero_test.hpp"

namespace plastsym::pr {

using sym::Expr;
using vf::VectorField;

const std::array<std::string, 3>& independent_names();  // t, x, y
const std::array<std::string, 4>& dependent_names();    // u, v, sigma, theta
// "u_x", "sigma_t", ...
std::string jet_name(const std::string& dep, const std::string& indep);
// The twelve first-order jet coordinates, dependent-major.
const std::vector<std::string>& jet_names();

// D_i on functions of the base coordinates only (first jet).
Expr total_derivative(const Expr& e, const std::string& indep);

struct ProlongedField {
  VectorField base;
  std::map<std::string, Expr> jet;  // keyed by jet_name
  Expr apply(const Expr& f) const;
};

// phi^a_j = D_j phi^a - sum_i u^a_i D_j xi^i
ProlongedField prolong1(const VectorField& X);

struct Force {
  std::string name = "none";
  Expr F1, F2;
};

Force no_force();
// F = grad V with V = V(t, x, y).
Force monogenic(const Expr& V);

// h1, h2 (and h3, h4) are either formal function symbols, left unbound so
// that zero tests randomise them, or bodies in the variable s.
struct FrictionParams {
  Expr kappa0 = Expr::param("kappa0");
  Expr kappa1 = Expr::param("kappa1");
  Expr kappa2 = Expr::param("kappa2");
  Expr kappa3 = Expr::param("kappa3");
  Expr kappa4 = Expr::param("kappa4");
  std::optional<Expr> h1, h2, h3, h4;
};

// Velocity-dependent force with the exp((k1/k2) atan(v/u)) factor.
Force friction(const FrictionParams& p);
enum class Transcription { printed, corrected };

// Adds the (t + k0/k1)^-1 forcing term. As printed the phase
// (k2/k1) ln(t + k0/k1) turns against the rotation part of K; the corrected
// form flips its sign so that K stays a symmetry for any k3, k4.
Force friction_timed(const FrictionParams& p, Transcription form = Transcription::printed);
// Adds the position term in h3, h4 of (x^2+y^2)/t^2.
Force friction_positional(const FrictionParams& p);

struct PDESystem {
  Force force;
  Expr rho = vf::rho();
  // Residuals of the equations of motion (a), (b), the plasticity
  // condition (c) and incompressibility (d), over base and jet variables.
  std::array<Expr, 4> residuals() const;
};

class ManifoldDegenerate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// sigma_x, sigma_y, v_x, v_y in terms of the remaining jet coordinates;
// requires sin(2 theta) != 0.
struct ManifoldSolve {
  std::map<std::string, Expr> solved;
};
ManifoldSolve solve_manifold(const PDESystem& sys);

struct SymmetryOptions {
  sym::ZeroTestOptions zero;
  SymmetryOptions();  // tol 1e-8, 100 trials, theta in [0.2, 1.2]
};

struct SymmetryReport {
  std::string generator;
  std::string force;
  std::array<double, 4> max_residual{};
  std::array<bool, 4> passed{true, true, true, true};
  int trials = 0;
  int failing_equation = -1;  // 0..3 for (a)..(d)
  std::optional<sym::Witness> witness;
  bool all_passed() const { return failing_equation < 0; }
};

// Infinitesimal criterion: pr X (Delta_k) = 0 on the solution manifold.
SymmetryReport check_symmetry(const VectorField& X, const PDESystem& sys,
                              const SymmetryOptions& opts = {}, std::string label = {});

}  // namespace plastsym::pr
