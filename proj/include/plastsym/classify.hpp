#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plastsym/adjoint.hpp"
#include "plastsym/rational.hpp"

namespace plastsym::cls {

using adj::Composite;
using adj::GroupElement;
using sym::Expr;
using vf::AlgebraElement;
using vf::VectorField;

class ClosureFailure : public std::runtime_error {
 public:
  ClosureFailure(const std::string& what, int i, int j) : std::runtime_error(what), first(i), second(j) {}
  int first, second;
};

class BothZero : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NoRealRoot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPolynomial : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Subalgebra {
  std::string label;
  std::vector<AlgebraElement> basis;
  // Indices of the basis elements spanning a claimed ideal (empty: none).
  std::vector<int> ideal;
  // Spot-check elements of the claimed normalizer.
  std::vector<GroupElement> normalizer;
  std::string normalizer_label;
  // Closure only up to S-valued brackets (subspaces of B).
  bool modulo_s = false;
  // A literal reading kept for the record; not expected to close.
  bool printed_reading = false;
  // Some basis elements are plain vector fields rather than algebra
  // elements (a function times X_f); they override basis when present.
  std::vector<VectorField> raw_fields;

  int dim() const { return static_cast<int>(raw_fields.empty() ? basis.size() : raw_fields.size()); }
  std::vector<VectorField> fields() const;
};

struct PairResult {
  int i = 0, j = 0;
  bool in_span = false;
  std::vector<double> coefficients;
  double max_abs = 0.0;
};

struct SubalgebraReport {
  std::string label;
  int dim = 0;
  bool closed = false;
  bool ideal_checked = false;
  bool ideal_ok = true;
  bool normalizer_checked = false;
  bool normalizer_ok = true;
  std::string normalizer_failure;
  std::vector<PairResult> pairs;
  std::optional<PairResult> failing_pair;
  bool passed() const { return closed && ideal_ok; }
};

struct VerifyOptions {
  int fit_points = 12;
  sym::ZeroTestOptions zero;
  bool throw_on_failure = false;
  VerifyOptions();  // rho fixed to 1, tol 1e-9
};

SubalgebraReport verify_representative(const Subalgebra& s, const VerifyOptions& o = {});
std::vector<SubalgebraReport> verify_all(const std::vector<Subalgebra>& list, const VerifyOptions& o = {});

// Least-squares coefficients of target in span(basis) and the zero test of
// the remainder (restricted to the non-sigma part and tested in S when
// modulo_s is set).
PairResult fit_in_span(const VectorField& target, const std::vector<VectorField>& basis,
                       const VerifyOptions& o, bool modulo_s = false);

struct CatalogGrid {
  std::vector<sym::Rational> a{-1, sym::Rational(1, 2), 1, 2};
  std::vector<sym::Rational> b{0, 1};
  std::vector<sym::Rational> c{0, 1};
};

// Representatives of the subalgebra lists: subalgebras of A, splitting
// two-dimensional ones, the S-extensions and a sample of two-dimensional
// subspaces of B. Labels name the family and the parameter values.
std::vector<Subalgebra> catalog(const CatalogGrid& grid = {});
// Literal readings that differ from the catalog entries.
std::vector<Subalgebra> printed_readings(const CatalogGrid& grid = {});

// ---- one-dimensional subalgebras <X_f + Y_g> of B ---------------------------

using Poly = std::vector<sym::Rational>;  // coefficient of t^k at index k

Poly to_poly(const Expr& e);
Expr from_poly(const std::vector<double>& c);

enum class Branch { root, no_root, constant };
std::string branch_name(Branch b);

struct NormalFormOptions {
  bool allow_fallback = true;  // otherwise NoRealRoot is thrown
};

struct NormalForm {
  Branch branch = Branch::root;
  int m1 = 0;
  int m2 = -1;  // -1 when mu = 0
  int mu = 0;
  // constant branch: first and second exponents of g after reduction
  int m3 = -1, m4 = -1;
  std::vector<double> f, g;         // reduced coefficients
  double rotation = 0.0, shift = 0.0, dilation = 0.0;
  double scale = 1.0;               // output = scale * Ad(conjugator) input
  Composite conjugator;             // [D, P0, L]: rotation acts first
  bool fallback = false;
  double f_head = 0.0, g_head = 0.0;  // lowest nonzero coefficients
  bool identity() const;
};

NormalForm normal_form_1d(const Expr& f, const Expr& g, const NormalFormOptions& o = {});
NormalForm normal_form_1d(const Poly& f, const Poly& g, const NormalFormOptions& o = {});

// X_f + Y_g as an algebra element.
AlgebraElement b_element(const Expr& f, const Expr& g);

}  // namespace plastsym::cls
