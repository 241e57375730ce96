#include "plastsym/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "plastsym/adjoint.hpp"
#include "plastsym/classify.hpp"
#include "plastsym/prolong.hpp"
#include "plastsym/solutions.hpp"

namespace plastsym::cli {

namespace {

using json = nlohmann::ordered_json;
using sym::Expr;

// Thrown for bad user input that parses as far as CLI11 is concerned.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json witness_json(const sym::Witness& w) {
  json j;
  j["point"] = json::object();
  for (const auto& [k, v] : w.point) j["point"][k] = v;
  if (!w.funcs.empty()) {
    j["functions"] = json::object();
    for (const auto& [k, f] : w.funcs) {
      j["functions"][k] = {{"poly", {f.c[0], f.c[1], f.c[2], f.c[3]}}, {"b", f.b},   {"lambda", f.lambda},
                           {"d", f.d},                                 {"omega", f.omega}, {"phi", f.phi}};
    }
  }
  j["index"] = w.index;
  j["value"] = w.value;
  j["scale"] = w.scale;
  return j;
}

sym::ZeroTestOptions zero_options(const RunConfig& c) {
  sym::ZeroTestOptions z;
  z.seed = c.seed;
  z.tol = c.tol;
  z.trials = c.trials;
  z.box.fixed["rho"] = c.rho;
  return z;
}

Expr parse_expr(const std::string& what, const std::string& text) {
  try {
    return sym::parse(text);
  } catch (const sym::ParseError& e) {
    throw InputError(what + ": " + e.what());
  }
}

// bodies of the h slots are written in s
Expr parse_slot_body(const std::string& what, const std::string& text) {
  return sym::substitute_params(parse_expr(what, text), {{"s", Expr::var("s")}});
}

double parse_number(const std::string& what, const std::string& text) {
  Expr e = parse_expr(what, text);
  try {
    return sym::evaluate(e, std::map<std::string, double>{});
  } catch (const std::exception&) {
    throw InputError(what + " must be a number, got '" + text + "'");
  }
}

// ---- options that several commands share -------------------------------------

struct Global {
  RunConfig cfg;
  bool tol_set = false, trials_set = false;
  std::string config_file;
};

struct TableArgs {
  int degree = 5;
  std::string table;
};

struct SymArgs {
  std::string force = "none";
  std::string V = "0";
  std::string h1, h2, h3, h4;
  std::string k0, k1, k2, k3, k4;
  std::vector<std::string> gens;
  bool all_force_free = false;
  bool corrected = false;
};

struct AdjArgs {
  std::vector<std::string> gens;
  std::vector<std::string> params;
  std::string target;
  int terms = 24;
  bool modulo_s = false;
};

struct NfArgs {
  std::string f = "0", g = "0";
  bool strict = false;
};

struct CatArgs {
  std::vector<std::string> a, b, c;
  bool readings = false;
};

struct SolArgs {
  std::string family = "R10";
  std::string form = "printed";
  std::string a1, a2, a3, b1, b2, b3, k1, k2, V, s, h;
  std::string at = "1,1,1";
  int points = 100;
  double t = 1.0;
  std::string grid = "-2:2:21", ygrid;
  std::string svg;
  bool json = false;
};

// ---- commands -----------------------------------------------------------------

struct Outcome {
  json body;
  bool passed = true;
  std::string raw;  // non-JSON output (CSV); replaces the report when set
};

Outcome cmd_check_table(const Global& g, const TableArgs& a) {
  vf::Table table = vf::default_table();
  if (!a.table.empty()) {
    std::ifstream in(a.table);
    if (!in) throw InputError("cannot read table file " + a.table);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      table = vf::table_from_json(ss.str());
    } catch (const std::exception& e) {
      throw InputError(std::string("bad table file: ") + e.what());
    }
  }
  vf::TableOptions o;
  o.degree = a.degree;
  o.zero = zero_options(g.cfg);
  auto rep = vf::check_table(table, o);
  Outcome out;
  out.passed = rep.all_passed();
  out.body["degree"] = a.degree;
  out.body["listed_passed"] = rep.listed_passed();
  out.body["listed_count"] = rep.listed_count();
  json rels = json::array();
  for (const auto& r : rep.results) {
    json j{{"name", r.name},         {"listed", r.listed},       {"vanishing", r.vanishing},
           {"passed", r.passed},     {"instances", r.instances}, {"max_abs", r.max_abs}};
    if (!r.passed) {
      j["failing_instance"] = r.failing_instance;
      j["component"] = r.component;
      if (r.witness) j["witness"] = witness_json(*r.witness);
    }
    rels.push_back(j);
  }
  out.body["relations"] = rels;
  return out;
}

pr::Force build_force(const SymArgs& a, pr::FrictionParams& fp) {
  auto kap = [&](const std::string& s, Expr& slot, const char* name) {
    if (!s.empty()) slot = parse_expr(name, s);
  };
  kap(a.k0, fp.kappa0, "--k0");
  kap(a.k1, fp.kappa1, "--k1");
  kap(a.k2, fp.kappa2, "--k2");
  kap(a.k3, fp.kappa3, "--k3");
  kap(a.k4, fp.kappa4, "--k4");
  auto h = [&](const std::string& s, std::optional<Expr>& slot, const char* name) {
    if (!s.empty()) slot = parse_slot_body(name, s);
  };
  h(a.h1, fp.h1, "--h1");
  h(a.h2, fp.h2, "--h2");
  h(a.h3, fp.h3, "--h3");
  h(a.h4, fp.h4, "--h4");
  const auto form = a.corrected ? pr::Transcription::corrected : pr::Transcription::printed;
  if (a.force == "none") return pr::no_force();
  if (a.force == "monogenic") return pr::monogenic(parse_expr("--V", a.V));
  // kappa3, kappa4 only enter through the timed term
  if (a.force == "friction") return a.k3.empty() && a.k4.empty() ? pr::friction(fp) : pr::friction_timed(fp, form);
  if (a.force == "friction-timed") return pr::friction_timed(fp, form);
  if (a.force == "friction-positional") return pr::friction_positional(fp);
  throw InputError("unknown force " + a.force);
}

const std::vector<std::string>& force_free_generators() {
  static const std::vector<std::string> g{"P0",    "D",      "L",      "X[1]",    "X[t]", "X[t^2]", "X[t^3]",
                                          "Y[1]", "Y[t]",  "Y[t^2]", "Y[t^3]", "S[1]", "S[t^2]"};
  return g;
}

Outcome cmd_check_symmetry(const Global& g, const SymArgs& a) {
  pr::FrictionParams fp;
  pr::PDESystem sys{build_force(a, fp)};
  pr::SymmetryOptions so;
  so.zero.seed = g.cfg.seed;
  so.zero.box.fixed["rho"] = g.cfg.rho;
  if (g.tol_set) so.zero.tol = g.cfg.tol;
  if (g.trials_set) so.zero.trials = g.cfg.trials;
  std::vector<std::string> names = a.gens;
  if (a.all_force_free) names.insert(names.end(), force_free_generators().begin(), force_free_generators().end());
  if (names.empty()) throw InputError("no generators: pass --gen or --all-force-free");
  Outcome out;
  out.body["force"] = sys.force.name;
  out.body["tol"] = so.zero.tol;
  out.body["trials"] = so.zero.trials;
  json list = json::array();
  for (const auto& n : names) {
    vf::GeneratorSpec spec;
    try {
      spec = vf::parse_generator(n);
    } catch (const std::exception& e) {
      throw InputError("--gen " + n + ": " + e.what());
    }
    if (spec.kind == vf::Kind::K) spec.kappa = {fp.kappa0, fp.kappa1, fp.kappa2};
    if (a.force == "monogenic") spec.potential = parse_expr("--V", a.V);
    pr::SymmetryReport r;
    try {
      r = pr::check_symmetry(vf::instantiate(spec), sys, so, n);
    } catch (const pr::ManifoldDegenerate& e) {
      throw InputError(e.what());
    }
    json j{{"generator", n}, {"passed", r.all_passed()}, {"trials", r.trials}};
    j["max_residual"] = {{"a", r.max_residual[0]}, {"b", r.max_residual[1]}, {"c", r.max_residual[2]},
                         {"d", r.max_residual[3]}};
    if (!r.all_passed()) {
      j["failing_equation"] = std::string(1, static_cast<char>('a' + r.failing_equation));
      if (r.witness) j["witness"] = witness_json(*r.witness);
    }
    out.passed = out.passed && r.all_passed();
    list.push_back(j);
  }
  out.body["generators"] = list;
  return out;
}

Outcome cmd_adjoint(const Global& g, const AdjArgs& a) {
  if (a.gens.empty()) throw InputError("pass at least one --gen");
  if (a.params.size() != a.gens.size()) throw InputError("each --gen needs one --param");
  if (a.target.empty()) throw InputError("--target is required");
  adj::Composite comp;
  for (std::size_t i = 0; i < a.gens.size(); ++i) {
    try {
      comp.push_back(adj::GroupElement::of(a.gens[i], parse_expr("--param", a.params[i])));
    } catch (const InputError&) {
      throw;
    } catch (const std::exception& e) {
      throw InputError("--gen " + a.gens[i] + ": " + e.what());
    }
  }
  vf::GeneratorSpec target;
  try {
    target = vf::parse_generator(a.target);
  } catch (const std::exception& e) {
    throw InputError("--target: " + std::string(e.what()));
  }
  adj::ClosedOptions co;
  co.modulo_s = a.modulo_s;
  double tol = g.tol_set ? g.cfg.tol : 1e-8;
  adj::AdCheckReport r;
  try {
    r = comp.size() == 1 ? adj::ad_check(comp[0], target, a.terms, tol, co, zero_options(g.cfg))
                         : adj::ad_check(comp, target, a.terms, tol, co, zero_options(g.cfg));
  } catch (const adj::NotCovered& e) {
    throw InputError(e.what());
  }
  Outcome out;
  out.passed = r.passed;
  out.body = {{"group", r.group},     {"target", r.target}, {"closed_form", r.closed_form},
              {"rule", r.rule},       {"terms", r.terms},   {"tol", tol},
              {"modulo_s", a.modulo_s}, {"passed", r.passed}, {"max_abs", r.max_abs},
              {"trials", r.trials}};
  if (r.witness) out.body["witness"] = witness_json(*r.witness);
  return out;
}

json composite_json(const adj::Composite& c) {
  json j = json::array();
  for (const auto& e : c) {
    json item{{"generator", e.gen.label()}, {"param", e.param.str()}};
    try {
      item["value"] = sym::evaluate(e.param, std::map<std::string, double>{});
    } catch (const std::exception&) {
    }
    j.push_back(item);
  }
  return j;
}

Outcome cmd_normal_form(const NfArgs& a) {
  cls::NormalFormOptions o;
  o.allow_fallback = !a.strict;
  cls::NormalForm nf;
  try {
    nf = cls::normal_form_1d(parse_expr("--f", a.f), parse_expr("--g", a.g), o);
  } catch (const cls::BothZero& e) {
    throw InputError(std::string("BothZero: ") + e.what());
  } catch (const cls::NoRealRoot& e) {
    throw InputError(std::string("NoRealRoot: ") + e.what());
  } catch (const cls::NotPolynomial& e) {
    throw InputError(std::string("NotPolynomial: ") + e.what());
  }
  Outcome out;
  out.body = {{"f", a.f},
              {"g", a.g},
              {"branch", cls::branch_name(nf.branch)},
              {"m1", nf.m1},
              {"m2", nf.m2},
              {"mu", nf.mu}};
  if (nf.branch == cls::Branch::constant) {
    out.body["m3"] = nf.m3;
    out.body["m4"] = nf.m4;
  }
  out.body["reduced"] = {{"f", nf.f}, {"g", nf.g}, {"f_expr", cls::from_poly(nf.f).str()},
                         {"g_expr", cls::from_poly(nf.g).str()}};
  out.body["rotation"] = nf.rotation;
  out.body["shift"] = nf.shift;
  out.body["dilation"] = nf.dilation;
  out.body["scale"] = nf.scale;
  out.body["fallback"] = nf.fallback;
  out.body["conjugator"] = composite_json(nf.conjugator);
  return out;
}

std::vector<sym::Rational> rationals(const std::vector<std::string>& in, const std::vector<sym::Rational>& dflt) {
  if (in.empty()) return dflt;
  std::vector<sym::Rational> out;
  for (const auto& s : in) {
    try {
      out.push_back(sym::Rational::parse(s));
    } catch (const std::exception&) {
      throw InputError("grid values must be rationals, got '" + s + "'");
    }
  }
  return out;
}

Outcome cmd_catalog(const Global& g, const CatArgs& a) {
  cls::CatalogGrid grid;
  grid.a = rationals(a.a, grid.a);
  grid.b = rationals(a.b, grid.b);
  grid.c = rationals(a.c, grid.c);
  cls::VerifyOptions vo;
  vo.zero.seed = g.cfg.seed;
  vo.zero.box.fixed["rho"] = g.cfg.rho;
  if (g.tol_set) vo.zero.tol = g.cfg.tol;
  auto list = a.readings ? cls::printed_readings(grid) : cls::catalog(grid);
  auto reps = cls::verify_all(list, vo);
  Outcome out;
  json entries = json::object();
  int closed = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& r = reps[i];
    json j{{"dim", r.dim}, {"closed", r.closed}};
    if (r.ideal_checked) j["ideal_ok"] = r.ideal_ok;
    if (r.normalizer_checked) {
      j["normalizer"] = list[i].normalizer_label;
      j["normalizer_ok"] = r.normalizer_ok;
      if (!r.normalizer_ok) j["normalizer_failure"] = r.normalizer_failure;
    }
    if (r.failing_pair) j["failing_pair"] = {r.failing_pair->i, r.failing_pair->j};
    j["basis"] = json::array();
    for (const auto& e : list[i].basis) j["basis"].push_back(vf::to_string(e));
    entries[r.label] = j;
    closed += r.closed ? 1 : 0;
    out.passed = out.passed && r.passed();
  }
  out.body["readings"] = a.readings ? "printed" : "catalog";
  out.body["entries_total"] = reps.size();
  out.body["entries_closed"] = closed;
  out.body["entries"] = entries;
  return out;
}

sol::FamilyParams family_params(const Global& g, const SolArgs& a) {
  sol::FamilyParams p;
  p.rho = g.cfg.rho;
  auto num = [&](const std::string& s, double& slot, const char* name) {
    if (!s.empty()) slot = parse_number(name, s);
  };
  num(a.a1, p.a1, "--a1");
  num(a.a2, p.a2, "--a2");
  num(a.b1, p.b1, "--b1");
  num(a.b2, p.b2, "--b2");
  num(a.b3, p.b3, "--b3");
  num(a.k1, p.kappa1, "--k1");
  num(a.k2, p.kappa2, "--k2");
  if (!a.a3.empty()) {
    p.a3 = parse_number("--a3", a.a3);
    p.rf_a3 = p.a3;
  }
  if (!a.a2.empty()) p.rf_a2 = p.a2;
  if (!a.V.empty()) p.V = parse_expr("--V", a.V);
  if (!a.s.empty()) p.s = parse_expr("--s", a.s);
  if (!a.h.empty()) p.h = parse_slot_body("--h-free", a.h);
  return p;
}

sol::Family make_family(const Global& g, const SolArgs& a) {
  if (a.form != "printed" && a.form != "corrected") throw InputError("--form must be printed or corrected");
  try {
    return sol::family(a.family, a.form == "printed" ? pr::Transcription::printed : pr::Transcription::corrected,
                       family_params(g, a));
  } catch (const sol::Unsupported& e) {
    throw InputError(e.what());
  }
}

json residual_json(const sol::ResidualReport& r) {
  return {{"form", r.form},
          {"points", r.points},
          {"skipped", r.skipped},
          {"max", r.max()},
          {"max_abs", {{"a", r.max_abs[0]}, {"b", r.max_abs[1]}, {"c", r.max_abs[2]}, {"d", r.max_abs[3]}}}};
}

Outcome cmd_solution_eval(const Global& g, const SolArgs& a) {
  auto f = make_family(g, a);
  std::vector<double> v;
  std::stringstream ss(a.at);
  for (std::string item; std::getline(ss, item, ',');) v.push_back(parse_number("--at", item));
  if (v.size() != 3) throw InputError("--at needs t,x,y");
  Outcome out;
  out.body = {{"family", f.name}, {"form", a.form}, {"params", f.params_label()}, {"at", v}};
  try {
    auto s = sol::evaluate_family(f, {v[0], v[1], v[2]});
    out.body["u"] = s.u;
    out.body["v"] = s.v;
    out.body["sigma"] = s.sigma;
    out.body["theta"] = s.theta;
  } catch (const sym::DomainViolation& e) {
    throw InputError(std::string("outside the domain (") + f.domain + "): " + e.what());
  }
  return out;
}

Outcome cmd_solution_residual(const Global& g, const SolArgs& a) {
  sol::ResidualOptions o;
  o.points = a.points;
  o.seed = g.cfg.seed;
  if (g.tol_set) o.gate = g.cfg.tol;
  Outcome out;
  out.body = {{"family", a.family}, {"gate", o.gate}};
  auto base = make_family(g, a);
  out.body["params"] = base.params_label();
  out.body["domain"] = base.domain;
  if (a.form == "corrected") {
    auto r = sol::residual(base, o);
    out.body["corrected"] = residual_json(r);
    out.passed = r.passed(o.gate);
  } else {
    auto as = sol::assess(a.family, base.params, o);
    out.body["printed"] = residual_json(as.printed);
    out.body["transcription_suspect"] = as.transcription_suspect;
    if (as.corrected) out.body["corrected"] = residual_json(*as.corrected);
    // status follows the printed form; the corrected numbers ride along
    out.passed = as.printed.passed(o.gate);
    if (as.corrected) out.body["corrected_passed"] = as.corrected->passed(o.gate);
  }
  out.body["passed"] = out.passed;
  return out;
}

Outcome cmd_solution_flowfield(const Global& g, const SolArgs& a) {
  auto f = make_family(g, a);
  sol::Grid grid;
  try {
    std::tie(grid.x0, grid.x1, grid.nx) = sol::parse_axis(a.grid);
    std::tie(grid.y0, grid.y1, grid.ny) = sol::parse_axis(a.ygrid.empty() ? a.grid : a.ygrid);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  auto ff = sol::flow_field(f, grid, a.t);
  Outcome out;
  if (a.json) {
    out.body["family"] = ff.family;
    out.body["comment"] = ff.comment.substr(2);
    out.body["t"] = ff.t;
    out.body["skipped"] = ff.skipped;
    json rows = json::array();
    for (const auto& p : ff.samples) rows.push_back({p.x, p.y, p.u, p.v});
    out.body["columns"] = {"x", "y", "u", "v"};
    out.body["samples"] = rows;
  } else {
    out.raw = sol::to_csv(ff);
  }
  if (!a.svg.empty()) {
    std::ofstream s(a.svg);
    if (!s) throw InputError("cannot write " + a.svg);
    s << sol::to_svg(ff, grid);
  }
  return out;
}

void add_family_options(CLI::App* sub, SolArgs& s) {
  sub->add_option("--family", s.family, "R10, R16, R17 or RF9")->capture_default_str();
  sub->add_option("--form", s.form, "printed or corrected")->capture_default_str();
  sub->add_option("--a1", s.a1, "integration constant a1");
  sub->add_option("--a2", s.a2, "integration constant a2");
  sub->add_option("--a3", s.a3, "integration constant a3");
  sub->add_option("--b1", s.b1, "integration constant b1 (R16)");
  sub->add_option("--b2", s.b2, "integration constant b2 (R16)");
  sub->add_option("--b3", s.b3, "integration constant b3 (R16)");
  sub->add_option("--k1", s.k1, "kappa1 (RF9)");
  sub->add_option("--k2", s.k2, "kappa2 (RF9)");
  sub->add_option("--V", s.V, "potential V(t,x,y)");
  sub->add_option("--s", s.s, "s(t) of R17");
  sub->add_option("--h-free", s.h, "free friction function of s (RF9)");
}

json config_json(const Global& g) {
  return {{"rho", g.cfg.rho},   {"tol", g.cfg.tol}, {"trials", g.cfg.trials},
          {"seed", g.cfg.seed}, {"out", g.cfg.out}, {"config_file", g.config_file}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry toolkit for planar ideal plastic flow", "plastsym"};
  app.fallthrough();
  app.require_subcommand(1);
  Global g;
  app.set_config("--config", "", "key=value file; flags override it")->check(CLI::ExistingFile);
  app.add_option("--seed", g.cfg.seed, "random seed")->capture_default_str();
  app.add_option("--rho", g.cfg.rho, "density parameter rho")->capture_default_str();
  app.add_option("--tol", g.cfg.tol, "tolerance");
  app.add_option("--trials", g.cfg.trials, "random trials per zero test");
  app.add_option("--out", g.cfg.out, "write the report here instead of stdout");
  app.add_flag("--timing", g.cfg.timing, "record wall time in the report");

  TableArgs ta;
  auto* table = app.add_subcommand("check-table", "verify the commutation table");
  table->add_option("--degree", ta.degree, "slot polynomials through this degree")->capture_default_str();
  table->add_option("--table", ta.table, "JSON table to check instead of the built-in one");

  SymArgs sa;
  auto* symc = app.add_subcommand("check-symmetry", "infinitesimal symmetry criterion");
  symc->add_option("--force", sa.force, "none, monogenic, friction, friction-timed, friction-positional")
      ->capture_default_str();
  symc->add_option("--V", sa.V, "potential for --force monogenic");
  symc->add_option("--h1", sa.h1, "friction function h1(s)");
  symc->add_option("--h2", sa.h2, "friction function h2(s)");
  symc->add_option("--h3", sa.h3, "friction function h3(s)");
  symc->add_option("--h4", sa.h4, "friction function h4(s)");
  symc->add_option("--k0", sa.k0, "kappa0");
  symc->add_option("--k1", sa.k1, "kappa1");
  symc->add_option("--k2", sa.k2, "kappa2");
  symc->add_option("--k3", sa.k3, "kappa3");
  symc->add_option("--k4", sa.k4, "kappa4");
  symc->add_option("--gen", sa.gens, "generator, e.g. D or X[t^2]; repeatable");
  symc->add_flag("--all-force-free", sa.all_force_free, "P0, D, L, X and Y with slots 1..t^3, S with 1 and t^2");
  symc->add_flag("--corrected", sa.corrected, "sign-corrected phase of the timed friction force");

  AdjArgs aa;
  auto* adjc = app.add_subcommand("adjoint", "closed-form adjoint action against the series");
  adjc->add_option("--gen", aa.gens, "group generator; repeat for a product, the last acts first");
  adjc->add_option("--param", aa.params, "group parameter, one per --gen");
  adjc->add_option("--target", aa.target, "element acted on, e.g. X[t^3]");
  adjc->add_option("--terms", aa.terms, "series terms")->capture_default_str();
  adjc->add_flag("--modulo-s", aa.modulo_s, "compare modulo S");

  NfArgs na;
  CatArgs ca;
  auto* clsc = app.add_subcommand("classify", "subalgebra classification");
  clsc->require_subcommand(1);
  auto* nfc = clsc->add_subcommand("normal-form", "normal form of <X_f + Y_g>");
  nfc->add_option("--f", na.f, "polynomial f(t)")->capture_default_str();
  nfc->add_option("--g", na.g, "polynomial g(t)")->capture_default_str();
  nfc->add_flag("--strict", na.strict, "fail with NoRealRoot instead of the fallback branch");
  auto* catc = clsc->add_subcommand("catalog", "closure and ideal checks of every representative");
  catc->add_option("--a", ca.a, "values of a");
  catc->add_option("--b", ca.b, "values of b");
  catc->add_option("--c", ca.c, "values of c");
  catc->add_flag("--printed-readings", ca.readings, "check the literal readings instead");

  SolArgs so;
  auto* solc = app.add_subcommand("solution", "invariant solutions");
  solc->require_subcommand(1);
  solc->fallthrough();
  add_family_options(solc, so);
  auto* evc = solc->add_subcommand("eval", "(u, v, sigma, theta) at a point");
  evc->add_option("--at", so.at, "t,x,y")->capture_default_str();
  auto* resc = solc->add_subcommand("residual", "PDE residuals at sampled points");
  resc->add_option("--points", so.points, "accepted sample points")->capture_default_str();
  auto* flc = solc->add_subcommand("flowfield", "velocity field on a grid, as CSV");
  flc->add_option("--t", so.t, "time")->capture_default_str();
  flc->add_option("--grid", so.grid, "lo:hi:count for x (and y)")->capture_default_str();
  flc->add_option("--ygrid", so.ygrid, "lo:hi:count for y");
  flc->add_option("--svg", so.svg, "also write an arrow plot here");
  flc->add_flag("--json", so.json, "JSON report instead of CSV");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }
  g.tol_set = app.count("--tol") > 0;
  g.trials_set = app.count("--trials") > 0;
  if (auto* c = app.get_option("--config"); c->count() > 0) g.config_file = c->as<std::string>();

  const auto t0 = std::chrono::steady_clock::now();
  Outcome res;
  std::string name;
  try {
    if (*table) {
      name = "check-table";
      res = cmd_check_table(g, ta);
    } else if (*symc) {
      name = "check-symmetry";
      res = cmd_check_symmetry(g, sa);
    } else if (*adjc) {
      name = "adjoint";
      res = cmd_adjoint(g, aa);
    } else if (*nfc) {
      name = "classify normal-form";
      res = cmd_normal_form(na);
    } else if (*catc) {
      name = "classify catalog";
      res = cmd_catalog(g, ca);
    } else if (*evc) {
      name = "solution eval";
      res = cmd_solution_eval(g, so);
    } else if (*resc) {
      name = "solution residual";
      res = cmd_solution_residual(g, so);
    } else if (*flc) {
      name = "solution flowfield";
      res = cmd_solution_flowfield(g, so);
    }
  } catch (const std::exception& e) {
    err << "plastsym: " << e.what() << "\n";
    return kInputError;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::string text;
  if (!res.raw.empty()) {
    text = res.raw;
  } else {
    json rep;
    rep["schema_version"] = kSchemaVersion;
    rep["command"] = name;
    rep["args"] = args;
    rep["config"] = config_json(g);
    rep["status"] = res.passed ? "pass" : "fail";
    for (auto& [k, v] : res.body.items()) rep[k] = v;
    if (g.cfg.timing) rep["wall_time_s"] = wall;
    text = rep.dump(2) + "\n";
  }
  if (g.cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(g.cfg.out);
    if (!f) {
      err << "plastsym: cannot write " << g.cfg.out << "\n";
      return kInputError;
    }
    f << text;
  }
  return res.passed ? kPass : kFail;
}

}  // namespace plastsym::cli
