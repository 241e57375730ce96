#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plastsym/expr.hpp"
#include "plastsym/zero_test.hpp"

namespace plastsym::vf {

using sym::Expr;

enum Coord : int { T = 0, X = 1, Y = 2, U = 3, V = 4, SIGMA = 5, THETA = 6 };
constexpr int kDim = 7;
const std::array<std::string, kDim>& coord_names();

// Field over (t, x, y, u, v, sigma, theta).
struct VectorField {
  std::array<Expr, kDim> c;

  // Directional derivative sum_i c_i d(f)/d(coord_i).
  Expr apply(const Expr& f) const;
  VectorField simplified() const;
  VectorField substitute_function(std::string_view fname, const Expr& body) const;
  VectorField substitute_params(const std::map<std::string, Expr>& values) const;
  std::vector<std::string> to_strings() const;
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(const Expr& k, const VectorField& a);
VectorField bracket(const VectorField& a, const VectorField& b);

enum class Kind { P0, P1, P2, D, L, K, X, Y, S, Bx, By, Psigma };
std::string kind_name(Kind k);

class MissingSlot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeneratorSpec {
  Kind kind = Kind::P0;
  std::optional<Expr> slot;  // f, g, h, tau2, tau3 or s, as a function of t
  // kappa0, kappa1, kappa2 of K; default to the named parameters.
  std::array<Expr, 3> kappa{Expr::param("kappa0"), Expr::param("kappa1"), Expr::param("kappa2")};
  std::optional<Expr> potential;  // V(t, x, y) of a monogenic force

  static GeneratorSpec of(Kind k, std::optional<Expr> slot = std::nullopt);
  bool needs_slot() const;
  // "P0", "X[t^2]", "K", ...
  std::string label() const;
};

// Accepts NAME or NAME[slot], e.g. "D", "X[t^2]", "S[f'(t)]".
GeneratorSpec parse_generator(std::string_view text);

const Expr& rho();
VectorField instantiate(const GeneratorSpec& g);

struct Term {
  Expr coef;
  GeneratorSpec gen;
};
using AlgebraElement = std::vector<Term>;
VectorField instantiate(const AlgebraElement& e);
std::string to_string(const AlgebraElement& e);
AlgebraElement substitute_function(const AlgebraElement& e, std::string_view fname,
                                   const Expr& body);

// Zero test of all seven components at shared sample points.
sym::ZeroTestResult field_is_zero(const VectorField& f, const sym::ZeroTestOptions& opts = {});

// ---- commutation table ------------------------------------------------------

struct Relation {
  std::string name;
  GeneratorSpec a, b;
  AlgebraElement expected;  // [a, b] = expected; empty means it vanishes
  bool listed = true;       // part of the published nonzero relations
};

struct Table {
  std::vector<Relation> relations;
};

// The force-free table with f, g, h as formal function symbols.
Table default_table();
// {"relations": [{"name": ..., "lhs": ["P0", "X[f(t)]"], "rhs": [{"coef": "1",
// "gen": "X[f'(t)]"}], "listed": true}]}
Table table_from_json(const std::string& text);
std::string table_to_json(const Table& t);

struct RelationResult {
  std::string name;
  bool vanishing = false;
  bool listed = true;
  bool passed = true;
  int instances = 0;
  double max_abs = 0.0;
  std::string failing_instance;
  std::optional<sym::Witness> witness;
  std::string component;  // coordinate whose residual failed
};

struct TableReport {
  std::vector<RelationResult> results;
  bool all_passed() const;
  int listed_count() const;
  int listed_passed() const;
};

struct TableOptions {
  int degree = 5;
  bool opaque_instance = true;
  sym::ZeroTestOptions zero;
};

TableReport check_table(const Table& table, const TableOptions& opts = {});

}  // namespace plastsym::vf
