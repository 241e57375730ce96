#include "plastsym/vfield.hpp"

#include <cctype>

namespace plastsym::vf {

using sym::diff;

const std::array<std::string, kDim>& coord_names() {
  static const std::array<std::string, kDim> names{"t", "x", "y", "u", "v", "sigma", "theta"};
  return names;
}

Expr VectorField::apply(const Expr& f) const {
  std::vector<Expr> terms;
  for (int i = 0; i < kDim; ++i) {
    if (c[i].is_zero()) continue;
    Expr d = diff(f, coord_names()[i]);
    if (!d.is_zero()) terms.push_back(c[i] * d);
  }
  return sym::add(std::move(terms));
}

VectorField VectorField::simplified() const {
  VectorField r;
  for (int i = 0; i < kDim; ++i) r.c[i] = sym::simplify(c[i]);
  return r;
}

VectorField VectorField::substitute_function(std::string_view fname, const Expr& body) const {
  VectorField r;
  for (int i = 0; i < kDim; ++i) r.c[i] = sym::substitute_function(c[i], fname, body);
  return r;
}

VectorField VectorField::substitute_params(const std::map<std::string, Expr>& values) const {
  VectorField r;
  for (int i = 0; i < kDim; ++i) r.c[i] = sym::substitute_params(c[i], values);
  return r;
}

std::vector<std::string> VectorField::to_strings() const {
  std::vector<std::string> out;
  for (const auto& e : c) out.push_back(e.str());
  return out;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  VectorField r;
  for (int i = 0; i < kDim; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  VectorField r;
  for (int i = 0; i < kDim; ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

VectorField operator*(const Expr& k, const VectorField& a) {
  VectorField r;
  for (int i = 0; i < kDim; ++i) r.c[i] = k * a.c[i];
  return r;
}

VectorField bracket(const VectorField& a, const VectorField& b) {
  VectorField r;
  for (int i = 0; i < kDim; ++i) r.c[i] = sym::simplify(a.apply(b.c[i]) - b.apply(a.c[i]));
  return r;
}

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::P0: return "P0";
    case Kind::P1: return "P1";
    case Kind::P2: return "P2";
    case Kind::D: return "D";
    case Kind::L: return "L";
    case Kind::K: return "K";
    case Kind::X: return "X";
    case Kind::Y: return "Y";
    case Kind::S: return "S";
    case Kind::Bx: return "Bx";
    case Kind::By: return "By";
    case Kind::Psigma: return "Psigma";
  }
  return "?";
}

GeneratorSpec GeneratorSpec::of(Kind k, std::optional<Expr> slot) {
  GeneratorSpec g;
  g.kind = k;
  g.slot = std::move(slot);
  return g;
}

bool GeneratorSpec::needs_slot() const {
  switch (kind) {
    case Kind::X:
    case Kind::Y:
    case Kind::S:
    case Kind::Bx:
    case Kind::By:
    case Kind::Psigma:
      return true;
    default:
      return false;
  }
}

std::string GeneratorSpec::label() const {
  std::string s = kind_name(kind);
  if (slot) s += "[" + slot->str() + "]";
  return s;
}

GeneratorSpec parse_generator(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  std::string name = s;
  std::optional<Expr> slot;
  if (auto open = s.find('['); open != std::string::npos) {
    if (s.back() != ']') throw sym::ParseError("generator slot must end with ']': " + s);
    name = s.substr(0, open);
    slot = sym::parse(s.substr(open + 1, s.size() - open - 2));
  }
  static const std::vector<std::pair<std::string, Kind>> kinds{
      {"P0", Kind::P0}, {"P1", Kind::P1}, {"P2", Kind::P2}, {"D", Kind::D},
      {"L", Kind::L},   {"K", Kind::K},   {"X", Kind::X},   {"Y", Kind::Y},
      {"S", Kind::S},   {"Bx", Kind::Bx}, {"By", Kind::By}, {"Psigma", Kind::Psigma}};
  for (const auto& [n, k] : kinds) {
    if (n == name) {
      GeneratorSpec g = GeneratorSpec::of(k, slot);
      if (g.needs_slot() && !g.slot) throw MissingSlot(name + " needs a slot function");
      if (!g.needs_slot() && g.slot) throw sym::ParseError(name + " takes no slot");
      return g;
    }
  }
  throw sym::ParseError("unknown generator '" + name + "'");
}

const Expr& rho() {
  static const Expr r = Expr::param("rho");
  return r;
}

namespace {

Expr var(const char* n) { return Expr::var(n); }

VectorField scaling() {
  VectorField f;
  f.c[T] = var("t");
  f.c[X] = var("x");
  f.c[Y] = var("y");
  return f;
}

VectorField rotation() {
  VectorField f;
  f.c[X] = var("y");
  f.c[Y] = -var("x");
  f.c[U] = var("v");
  f.c[V] = -var("u");
  f.c[THETA] = Expr(-1);
  return f;
}

}  // namespace

VectorField instantiate(const GeneratorSpec& g) {
  if (g.needs_slot() && !g.slot) throw MissingSlot(kind_name(g.kind) + " needs a slot function");
  const Expr t = var("t"), x = var("x"), y = var("y");
  const std::optional<Expr>& pot = g.potential;
  auto Vd = [&](const char* c) { return pot ? diff(*pot, c) : Expr(); };
  VectorField f;
  switch (g.kind) {
    case Kind::P0:
      f.c[T] = Expr(1);
      f.c[SIGMA] = -(rho() * Vd("t"));
      break;
    case Kind::P1:
      f.c[X] = Expr(1);
      break;
    case Kind::P2:
      f.c[Y] = Expr(1);
      break;
    case Kind::D:
      f = scaling();
      f.c[SIGMA] = -(rho() * (t * Vd("t") + x * Vd("x") + y * Vd("y")));
      break;
    case Kind::L:
      f = rotation();
      f.c[SIGMA] = rho() * (x * Vd("y") - y * Vd("x"));
      break;
    case Kind::K: {
      VectorField tr;
      tr.c[T] = Expr(1);
      f = g.kappa[0] * tr + g.kappa[1] * scaling() + g.kappa[2] * rotation();
      break;
    }
    case Kind::X: {
      const Expr& s = *g.slot;
      f.c[X] = s;
      f.c[U] = diff(s, "t");
      f.c[SIGMA] = rho() * x * diff(s, "t", 2);
      break;
    }
    case Kind::Y: {
      const Expr& s = *g.slot;
      f.c[Y] = s;
      f.c[V] = diff(s, "t");
      f.c[SIGMA] = rho() * y * diff(s, "t", 2);
      break;
    }
    case Kind::S:
      f.c[SIGMA] = *g.slot;
      break;
    case Kind::Psigma:
      f.c[SIGMA] = rho() * *g.slot;
      break;
    case Kind::Bx: {
      if (!pot) throw MissingSlot("Bx needs a potential");
      const Expr& s = *g.slot;
      f.c[X] = s;
      f.c[U] = diff(s, "t");
      f.c[SIGMA] = -(rho() * (s * Vd("x") - x * diff(s, "t", 2)));
      break;
    }
    case Kind::By: {
      if (!pot) throw MissingSlot("By needs a potential");
      const Expr& s = *g.slot;
      f.c[Y] = s;
      f.c[V] = diff(s, "t");
      f.c[SIGMA] = -(rho() * (s * Vd("y") - y * diff(s, "t", 2)));
      break;
    }
  }
  return f;
}

VectorField instantiate(const AlgebraElement& e) {
  VectorField f;
  for (const auto& term : e) f = f + term.coef * instantiate(term.gen);
  return f;
}

std::string to_string(const AlgebraElement& e) {
  if (e.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += " + ";
    if (!e[i].coef.is_one()) out += "(" + e[i].coef.str() + ")*";
    out += e[i].gen.label();
  }
  return out;
}

AlgebraElement substitute_function(const AlgebraElement& e, std::string_view fname,
                                   const Expr& body) {
  AlgebraElement out = e;
  for (auto& term : out) {
    term.coef = sym::substitute_function(term.coef, fname, body);
    if (term.gen.slot) term.gen.slot = sym::substitute_function(*term.gen.slot, fname, body);
  }
  return out;
}

sym::ZeroTestResult field_is_zero(const VectorField& f, const sym::ZeroTestOptions& opts) {
  return sym::is_zero(std::span<const Expr>(f.c.data(), f.c.size()), opts);
}

}  // namespace plastsym::vf
