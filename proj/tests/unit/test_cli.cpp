#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "plastsym/cli.hpp"

using json = nlohmann::ordered_json;
using namespace plastsym;

namespace {

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = cli::run(args, o, e);
  return {c, o.str(), e.str()};
}

std::string temp_path(const std::string& leaf) {
  return (std::filesystem::temp_directory_path() / ("plastsym_test_" + leaf)).string();
}

}  // namespace

TEST_CASE("check-table passes and reports the envelope") {
  auto r = run({"check-table", "--degree", "2"});
  REQUIRE(r.code == cli::kPass);
  auto j = r.report();
  CHECK(j["schema_version"] == cli::kSchemaVersion);
  CHECK(j["command"] == "check-table");
  CHECK(j["status"] == "pass");
  CHECK(j["degree"] == 2);
  CHECK(j["listed_passed"] == j["listed_count"]);
  CHECK_FALSE(j.contains("wall_time_s"));
  // keys keep their insertion order
  CHECK(r.out.find("\"schema_version\"") < r.out.find("\"command\""));
  CHECK(r.out.find("\"config\"") < r.out.find("\"status\""));
}

TEST_CASE("a corrupted table fails with a witness") {
  auto r = run({"check-table", "--degree", "2", "--table", std::string(PLASTSYM_FIXTURES) + "/corrupted_table.json"});
  CHECK(r.code == cli::kFail);
  auto j = r.report();
  CHECK(j["status"] == "fail");
  int failed = 0;
  for (const auto& rel : j["relations"]) {
    if (!rel["passed"].get<bool>()) {
      ++failed;
      CHECK(rel.contains("witness"));
      CHECK(rel["witness"].contains("point"));
    }
  }
  CHECK(failed >= 1);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"no-such-command"}).code == cli::kUsage);
  CHECK(run({"check-table", "--degree", "x"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kPass);
  CHECK(run({"classify", "normal-form", "--f", "0", "--g", "0"}).code == cli::kInputError);
  CHECK(run({"classify", "normal-form", "--f", "t^^2"}).code == cli::kInputError);
  CHECK(run({"check-table", "--table", "/nonexistent/table.json"}).code == cli::kInputError);
  CHECK(run({"solution", "flowfield", "--family", "R17", "--grid", "1:2"}).code == cli::kInputError);
  CHECK(run({"solution", "eval", "--family", "R99"}).code == cli::kInputError);
}

TEST_CASE("both-zero input names the problem") {
  auto r = run({"classify", "normal-form", "--f", "0", "--g", "0"});
  CHECK(r.code == cli::kInputError);
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("check-symmetry verdicts") {
  auto ok = run({"check-symmetry", "--force", "friction", "--h1", "s", "--h2", "1", "--k0", "0", "--k1", "1", "--k2",
                 "1", "--gen", "K"});
  CHECK(ok.code == cli::kPass);
  auto bad = run({"check-symmetry", "--force", "friction-timed", "--k3", "1", "--gen", "P0"});
  CHECK(bad.code == cli::kFail);
  auto j = bad.report();
  REQUIRE(j["generators"].size() == 1);
  CHECK(j["generators"][0].contains("witness"));
  CHECK(j["generators"][0].contains("failing_equation"));
}

TEST_CASE("normal form report") {
  auto r = run({"classify", "normal-form", "--f", "2t^2+6t^3"});
  REQUIRE(r.code == cli::kPass);
  auto j = r.report();
  CHECK(j["m1"] == 2);
  CHECK(j["m2"] == 3);
  CHECK(j["reduced"]["f"] == json::array({0, 0, 1, 1}));
  CHECK(j["conjugator"].is_array());
}

TEST_CASE("adjoint subcommand") {
  CHECK(run({"adjoint", "--gen", "L", "--param", "1/2", "--target", "X[t^3]"}).code == cli::kPass);
  CHECK(run({"adjoint", "--gen", "D", "--param", "1/3", "--target", "Y[t^2+1]", "--terms", "24"}).code == cli::kPass);
  // truncating too early is a failing comparison, not an input error
  CHECK(run({"adjoint", "--gen", "D", "--param", "1/2", "--target", "X[t^3]", "--terms", "2"}).code == cli::kFail);
}

TEST_CASE("solution residual status follows the printed form") {
  CHECK(run({"solution", "residual", "--family", "R10"}).code == cli::kPass);
  auto r17 = run({"solution", "residual", "--family", "R17"});
  CHECK(r17.code == cli::kFail);
  auto j = r17.report();
  CHECK(j["corrected_passed"] == true);
  CHECK(j["printed"].is_object());
  auto rf9 = run({"solution", "residual", "--family", "RF9"}).report();
  CHECK(rf9["transcription_suspect"] == true);
}

TEST_CASE("config file, overridden by flags") {
  const std::string cfg = temp_path("cli.ini");
  {
    std::ofstream f(cfg);
    f << "seed=99\nrho=2.5\ntrials=7\n";
  }
  auto a = run({"--config", cfg, "check-table", "--degree", "1"}).report();
  CHECK(a["config"]["seed"] == 99);
  CHECK(a["config"]["rho"] == 2.5);
  CHECK(a["config"]["trials"] == 7);
  auto b = run({"--config", cfg, "--seed", "5", "check-table", "--degree", "1"}).report();
  CHECK(b["config"]["seed"] == 5);
  CHECK(b["config"]["rho"] == 2.5);
  std::remove(cfg.c_str());
}

TEST_CASE("reports round-trip through JSON and --out") {
  const std::string path = temp_path("report.json");
  auto r = run({"--out", path, "--seed", "3", "solution", "eval", "--family", "R10", "--at", "1,1,1"});
  REQUIRE(r.code == cli::kPass);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream text;
  text << f.rdbuf();
  auto j = json::parse(text.str());
  CHECK(j["u"].get<double>() == doctest::Approx(0.5));
  CHECK(j["v"].get<double>() == doctest::Approx(0.5));
  CHECK(j.dump(2) + "\n" == text.str());
  std::remove(path.c_str());
}

TEST_CASE("timing is opt-in") {
  auto j = run({"--timing", "check-table", "--degree", "1"}).report();
  CHECK(j.contains("wall_time_s"));
}

TEST_CASE("same seed, same bytes") {
  std::vector<std::string> args{"--seed", "42", "check-symmetry", "--force", "friction-timed", "--k3", "1", "--gen",
                                "P0"};
  CHECK(run(args).out == run(args).out);
  auto other = args;
  other[1] = "43";
  CHECK(run(args).out != run(other).out);
}

TEST_CASE("flowfield writes CSV and SVG") {
  const std::string svg = temp_path("flow.svg");
  auto r = run({"solution", "flowfield", "--family", "R17", "--t", "10", "--grid", "-1:1:5", "--svg", svg});
  REQUIRE(r.code == cli::kPass);
  CHECK(r.out.rfind("# family=R17", 0) == 0);
  CHECK(r.out.find("\nx,y,u,v\n") != std::string::npos);
  std::ifstream f(svg);
  std::stringstream text;
  text << f.rdbuf();
  CHECK(text.str().rfind("<svg", 0) == 0);
  std::remove(svg.c_str());
}

TEST_CASE("flowfield as JSON") {
  auto r = run({"solution", "flowfield", "--family", "R17", "--t", "0.1", "--grid", "-1:1:3", "--json"});
  REQUIRE(r.code == cli::kPass);
  auto j = r.report();
  CHECK(j["status"] == "pass");
  CHECK(j["skipped"] == 1);
  CHECK(j["samples"].size() == 8);
  CHECK(json::parse(j.dump()) == j);
}

TEST_CASE("friction with kappa3 takes the timed force") {
  auto r = run({"check-symmetry", "--force", "friction", "--k3", "1", "--gen", "P0"});
  CHECK(r.code == cli::kFail);
  CHECK(r.report()["force"] == "friction-timed");
  CHECK(run({"check-symmetry", "--force", "friction", "--k3", "1", "--corrected", "--gen", "K"}).code == cli::kPass);
}
