#include <set>

#include "json.hpp"
#include "plastsym/vfield.hpp"

namespace plastsym::vf {

namespace {

struct RawRelation {
  const char* name;
  const char* a;
  const char* b;
  std::vector<std::pair<const char*, const char*>> rhs;
  bool listed = true;
};

// Formal slots f, g, h; [D, Y_g] carries rho*y in its sigma component.
const std::vector<RawRelation>& raw_table() {
  static const std::vector<RawRelation> rows{
      {"[P0,X_f]", "P0", "X[f(t)]", {{"1", "X[f'(t)]"}}},
      {"[P0,Y_g]", "P0", "Y[g(t)]", {{"1", "Y[g'(t)]"}}},
      {"[P0,D]", "P0", "D", {{"1", "P0"}}},
      {"[P0,S_h]", "P0", "S[h(t)]", {{"1", "S[h'(t)]"}}},
      {"[D,S_h]", "D", "S[h(t)]", {{"1", "S[t*h'(t)]"}}},
      {"[D,X_f]", "D", "X[f(t)]", {{"1", "X[t*f'(t) - f(t)]"}}},
      {"[D,Y_g]", "D", "Y[g(t)]", {{"1", "Y[t*g'(t) - g(t)]"}}},
      {"[L,X_f]", "L", "X[f(t)]", {{"1", "Y[f(t)]"}}},
      {"[L,Y_g]", "L", "Y[g(t)]", {{"-1", "X[g(t)]"}}},
      // Not in the published list: two slots of the same direction
      // commute only modulo S.
      {"[X_f,X_g]", "X[f(t)]", "X[g(t)]", {{"1", "S[rho*(f(t)*g''(t) - f''(t)*g(t))]"}}, false},
      {"[Y_f,Y_g]", "Y[f(t)]", "Y[g(t)]", {{"1", "S[rho*(f(t)*g''(t) - f''(t)*g(t))]"}}, false},
      {"[P0,L]", "P0", "L", {}, false},
      {"[D,L]", "D", "L", {}, false},
      {"[X_f,Y_g]", "X[f(t)]", "Y[g(t)]", {}, false},
      {"[X_f,S_h]", "X[f(t)]", "S[h(t)]", {}, false},
      {"[Y_g,S_h]", "Y[g(t)]", "S[h(t)]", {}, false},
      {"[L,S_h]", "L", "S[h(t)]", {}, false},
      {"[S_f,S_h]", "S[f(t)]", "S[h(t)]", {}, false},
  };
  return rows;
}

std::set<std::string> slot_functions(const Relation& r) {
  std::set<std::string> out;
  auto add = [&](const GeneratorSpec& g) {
    if (g.slot) {
      auto fs = sym::free_symbols(*g.slot).funcs;
      out.insert(fs.begin(), fs.end());
    }
  };
  add(r.a);
  add(r.b);
  for (const auto& term : r.expected) {
    add(term.gen);
    auto fs = sym::free_symbols(term.coef).funcs;
    out.insert(fs.begin(), fs.end());
  }
  return out;
}

GeneratorSpec substitute(const GeneratorSpec& g, std::string_view f, const Expr& body) {
  GeneratorSpec out = g;
  if (out.slot) out.slot = sym::substitute_function(*out.slot, f, body);
  return out;
}

}  // namespace

Table default_table() {
  Table t;
  for (const auto& row : raw_table()) {
    Relation r;
    r.name = row.name;
    r.a = parse_generator(row.a);
    r.b = parse_generator(row.b);
    r.listed = row.listed;
    for (const auto& [coef, gen] : row.rhs) r.expected.push_back({sym::parse(coef), parse_generator(gen)});
    t.relations.push_back(std::move(r));
  }
  return t;
}

Table table_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Table t;
  for (const auto& row : j.at("relations")) {
    Relation r;
    r.name = row.at("name").get<std::string>();
    const auto& lhs = row.at("lhs");
    if (!lhs.is_array() || lhs.size() != 2) {
      throw std::invalid_argument("relation " + r.name + ": lhs must list two generators");
    }
    r.a = parse_generator(lhs[0].get<std::string>());
    r.b = parse_generator(lhs[1].get<std::string>());
    r.listed = row.value("listed", true);
    for (const auto& term : row.value("rhs", nlohmann::json::array())) {
      r.expected.push_back({sym::parse(term.value("coef", std::string("1"))),
                            parse_generator(term.at("gen").get<std::string>())});
    }
    t.relations.push_back(std::move(r));
  }
  return t;
}

std::string table_to_json(const Table& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.relations) {
    nlohmann::json rhs = nlohmann::json::array();
    for (const auto& term : r.expected) {
      rhs.push_back({{"coef", term.coef.str()}, {"gen", term.gen.label()}});
    }
    rows.push_back({{"name", r.name},
                    {"lhs", {r.a.label(), r.b.label()}},
                    {"rhs", rhs},
                    {"listed", r.listed}});
  }
  return nlohmann::json{{"relations", rows}}.dump(2);
}

bool TableReport::all_passed() const {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

int TableReport::listed_count() const {
  int n = 0;
  for (const auto& r : results) n += r.listed ? 1 : 0;
  return n;
}

int TableReport::listed_passed() const {
  int n = 0;
  for (const auto& r : results) n += (r.listed && r.passed) ? 1 : 0;
  return n;
}

TableReport check_table(const Table& table, const TableOptions& opts) {
  TableReport report;
  const Expr t = Expr::var("t");
  for (const auto& rel : table.relations) {
    RelationResult res;
    res.name = rel.name;
    res.vanishing = rel.expected.empty();
    res.listed = rel.listed;
    std::set<std::string> funcs = slot_functions(rel);

    // Instance k binds the i-th slot function to t^((k + i) mod (degree + 1)).
    std::vector<std::pair<std::string, Relation>> instances;
    for (int k = 0; k <= opts.degree; ++k) {
      Relation inst = rel;
      std::string desc;
      int i = 0;
      for (const auto& f : funcs) {
        int p = (k + i++) % (opts.degree + 1);
        Expr body = sym::pow(t, p);
        inst.a = substitute(inst.a, f, body);
        inst.b = substitute(inst.b, f, body);
        inst.expected = substitute_function(inst.expected, f, body);
        if (!desc.empty()) desc += ", ";
        desc += f + "=" + body.str();
      }
      instances.emplace_back(desc.empty() ? "constant" : desc, std::move(inst));
      if (funcs.empty()) break;
    }
    if (opts.opaque_instance && !funcs.empty()) instances.emplace_back("opaque", rel);

    for (const auto& [desc, inst] : instances) {
      VectorField residual =
          (bracket(instantiate(inst.a), instantiate(inst.b)) - instantiate(inst.expected))
              .simplified();
      auto z = field_is_zero(residual, opts.zero);
      ++res.instances;
      res.max_abs = std::max(res.max_abs, z.max_abs);
      if (!z.zero && res.passed) {
        res.passed = false;
        res.failing_instance = desc;
        res.witness = z.witness;
        res.component = coord_names()[z.witness->index];
      }
    }
    report.results.push_back(std::move(res));
  }
  return report;
}

}  // namespace plastsym::vf
