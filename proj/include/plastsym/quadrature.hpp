#pragma once

#include <functional>

namespace plastsym::sym {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // Kronrod minus Gauss, summed over panels
  int panels = 0;
  bool converged = false;
};

// Adaptive 7/15-point Gauss-Kronrod. b < a is allowed and flips the sign.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-10, int max_panels = 400);

}  // namespace plastsym::sym
