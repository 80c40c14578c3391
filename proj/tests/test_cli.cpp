#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "vex/cli/commands.hpp"

using namespace vex;
using namespace vex::cli;
namespace fs = std::filesystem;

namespace {

std::string corpus(const std::string& f) { return std::string(VEX_CORPUS_DIR) + "/" + f; }

Options problem(const std::string& f) {
  Options o;
  o.problem = corpus(f);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("vex-test-cli-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("check exit codes") {
  Options o = problem("f4.json");
  o.property = "approx-stationary";
  CHECK(run("check", o).exit_code == kHolds);
  o.property = "stationary";
  const auto r = run("check", o);
  CHECK(r.exit_code == kRefuted);
  CHECK(r.result["eps_star"] == "1/2");
  o.problem = "missing.json";
  const auto m = run("check", o);
  CHECK(m.exit_code == kInputError);
  CHECK(m.summary.find("cannot read") != std::string::npos);
  o = problem("f1.json");
  o.property = "sideways";
  CHECK(run("check", o).exit_code == kInputError);
}

TEST_CASE("extremal-point check reads the level set from the problem") {
  Options o = problem("f1.json");
  o.property = "extremal-point";
  const auto r = run("check", o);
  CHECK(r.exit_code == kHolds);
  CHECK(r.result["rho"] == "inf");
  o.problem = corpus("f4.json");
  CHECK(run("check", o).exit_code == kRefuted);
}

TEST_CASE("certify output verifies against its own problem") {
  const fs::path dir = scratch("certify");
  for (const char* kind : {"separation", "multiplier"}) {
    Options o = problem("f3.json");
    o.kind = kind;
    o.eps = "1/8";
    o.out = (dir / (std::string(kind) + ".json")).string();
    std::ostringstream out, err;
    REQUIRE(execute("certify", o, out, err) == kHolds);
    Options v = problem("f3.json");
    v.cert_file = o.out;
    const auto r = run("verify-cert", v);
    CHECK(r.exit_code == kHolds);
    CHECK(r.result["status"] == "Accepted");
  }
  Options s = problem("f3.json");
  s.kind = "singular";
  s.eps = "1/8";
  // not found is inconclusive, never 0
  CHECK(run("certify", s).exit_code == kInconclusive);
}

TEST_CASE("bundled multiplier certificate") {
  Options o = problem("f4.json");
  o.cert_file = corpus("example-3.3-multiplier.json");
  CHECK(run("verify-cert", o).exit_code == kHolds);
  o.eps = "1/200";
  CHECK(run("verify-cert", o).exit_code == kRefuted);
}

TEST_CASE("coderivative, cones, aubin, qc") {
  Options o = problem("f4.json");
  o.x = "1/200";
  o.y = "-1/40000";
  o.ystar = "1";
  const auto c = run("coderivative", o);
  REQUIRE(c.exit_code == kHolds);
  CHECK(c.result["coderivative"]["point"] == Json::array({"-1/100"}));
  o.y = "1/2";  // inside the epigraph, not on the boundary: normal cone is {0}
  CHECK(run("coderivative", o).result["coderivative"]["kind"] == "empty");
  o.y = "-1";
  CHECK(run("coderivative", o).exit_code == kInputError);

  Options k = problem("f4.json");
  k.point = "0,0";
  k.flavor = "frechet";
  const auto kc = run("cones", k);
  CHECK(kc.exit_code == kHolds);
  CHECK(kc.result["normal"]["generators"].empty());

  Options a = problem("f4.json");
  a.delta = "1/4";
  const auto ar = run("aubin", a);
  CHECK(ar.exit_code == kHolds);
  CHECK(ar.result["tau_upper"] == "1");

  CHECK(run("qc", problem("f4.json")).exit_code == kHolds);
}

TEST_CASE("levelset command") {
  Options o;
  o.mapping_file = corpus("example-4.2.json");
  o.point = "0,0";
  o.props = true;
  const auto r = run("levelset", o);
  CHECK(r.exit_code == kHolds);
  CHECK(r.result["properties"]["O1"]["verdict"] == "Fails");
  CHECK(r.result["properties"]["O1"]["verified"] == true);
  CHECK(r.result["properties"]["O4"]["verdict"] == "Holds");
  o.point = "0";
  CHECK(run("levelset", o).exit_code == kInputError);
}

TEST_CASE("manifest is deterministic and self-describing") {
  const fs::path dir = scratch("manifest");
  Options o = problem("f4.json");
  o.property = "stationary";
  o.out = (dir / "v.json").string();
  o.manifest = (dir / "m1.json").string();
  std::ostringstream out, err;
  CHECK(execute("check", o, out, err) == kRefuted);
  const std::string v1 = slurp(o.out);
  o.manifest = (dir / "m2.json").string();
  CHECK(execute("check", o, out, err) == kRefuted);
  CHECK(slurp(o.out) == v1);
  const Json m = io::read_file((dir / "m1.json").string());
  CHECK(m["exit_code"] == kRefuted);
  CHECK(m["config"]["schedule_depth"] == 12);
  CHECK(m["schedule"].size() == 12);
  CHECK(m["grid"]["denominator"] == "4096");
  CHECK(m["budget"] == 64);
  CHECK(m["artifacts"][0] == o.out);
  // the manifest's own path is not part of the configuration
  CHECK(slurp(dir / "m2.json") == slurp(dir / "m1.json"));
}

TEST_CASE("corpus filtering and fault injection") {
  Options o;
  o.corpus_dir = VEX_CORPUS_DIR;
  o.filter = "o-properties";
  const auto r = run("corpus", o);
  CHECK(r.exit_code == kHolds);
  REQUIRE(r.result["cases"].size() == 2);
  CHECK(r.result["cases"][0]["name"] == "example-4.1/o-properties");
  CHECK(r.result["cases"][1]["name"] == "example-4.2/o-properties");

  Options f;
  f.corpus_dir = VEX_CORPUS_DIR;
  f.inject_fault = "cones";
  f.filter = "example-3";
  const auto bad = run("corpus", f);
  CHECK(bad.exit_code == kRefuted);
  CHECK(bad.result["first_failure"] == "example-3.3/coderivative");

  f.inject_fault = "everything";
  CHECK(run("corpus", f).exit_code == kInputError);
  f.inject_fault.clear();
  f.filter = "no-such-case";
  CHECK(run("corpus", f).exit_code == kInputError);
}
