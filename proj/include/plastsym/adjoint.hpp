#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plastsym/vfield.hpp"
#include "plastsym/zero_test.hpp"

namespace plastsym::adj {

using sym::Expr;
using vf::AlgebraElement;
using vf::GeneratorSpec;
using vf::VectorField;

class NotCovered : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// exp(param * gen) for gen in {P0, D, L, X_f, Y_g}. For X_f and Y_g the
// parameter scales the slot.
struct GroupElement {
  GeneratorSpec gen;
  Expr param;

  static GroupElement of(std::string_view generator, Expr param);
  GroupElement inverse() const;
  VectorField generator() const;  // param * instantiate(gen)
  std::string label() const;
};

// Ordered product g1 g2 ... gk; the adjoint action applies gk first.
using Composite = std::vector<GroupElement>;

// sum_{n < terms} ad(gamma)^n X / n!
VectorField ad_series(const GroupElement& g, const VectorField& X, int terms);
VectorField ad_series(const Composite& g, const VectorField& X, int terms);

struct ClosedOptions {
  // Drop the S-valued terms of exp(B) acting on A and on B, which is the
  // action on the factor algebra L/S.
  bool modulo_s = false;
  // Expand slots after t -> e^a t or t -> t + t0 (exact coefficient
  // rescaling for polynomial slots).
  bool expand_slots = true;
};

struct AdjointResult {
  AlgebraElement element;
  std::string rule;  // the closed form used, for reports
};

AdjointResult ad_closed(const GroupElement& g, const GeneratorSpec& X, const ClosedOptions& o = {});
AdjointResult ad_closed(const GroupElement& g, const AlgebraElement& X, const ClosedOptions& o = {});
AdjointResult ad_closed(const Composite& g, const AlgebraElement& X, const ClosedOptions& o = {});

struct AdCheckReport {
  std::string group;
  std::string target;
  std::string closed_form;
  std::string rule;
  int terms = 0;
  bool passed = false;
  double max_abs = 0.0;
  int trials = 0;
  std::optional<sym::Witness> witness;
};

// Series against closed form with the zero test at tolerance `tol`.
AdCheckReport ad_check(const GroupElement& g, const GeneratorSpec& X, int terms, double tol,
                       const ClosedOptions& o = {}, sym::ZeroTestOptions zero = {});
AdCheckReport ad_check(const Composite& g, const GeneratorSpec& X, int terms, double tol,
                       const ClosedOptions& o = {}, sym::ZeroTestOptions zero = {});

// The field is h(t) d/dsigma for some h, i.e. lies in S.
bool in_s(const VectorField& f, const sym::ZeroTestOptions& opts = {});

}  // namespace plastsym::adj
