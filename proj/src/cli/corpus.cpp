#include "corpus.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vex/core/errors.hpp"

#ifndef VEX_CORPUS_DIR
#define VEX_CORPUS_DIR "corpus"
#endif

namespace vex::cli {

namespace fs = std::filesystem;

namespace {

std::string opt_str(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) return "";
  if (!it->is_string()) throw MalformedInput(std::string("schema: case option '") + key + "' must be a string");
  return it->get<std::string>();
}

std::string in_dir(const fs::path& dir, const std::string& file) {
  return file.empty() ? file : (dir / file).string();
}

Options case_options(const Json& j, const fs::path& dir) {
  Options o;
  o.problem = in_dir(dir, opt_str(j, "problem"));
  o.set_file = in_dir(dir, opt_str(j, "set"));
  o.mapping_file = in_dir(dir, opt_str(j, "mapping"));
  o.cert_file = in_dir(dir, opt_str(j, "cert"));
  if (j.contains("property")) o.property = opt_str(j, "property");
  if (j.contains("flavor")) o.flavor = opt_str(j, "flavor");
  if (j.contains("kind")) o.kind = opt_str(j, "kind");
  if (j.contains("eps")) o.eps = opt_str(j, "eps");
  if (j.contains("rho")) o.rho = opt_str(j, "rho");
  if (j.contains("delta")) o.delta = opt_str(j, "delta");
  o.point = opt_str(j, "point");
  o.x = opt_str(j, "x");
  o.y = opt_str(j, "y");
  o.ystar = opt_str(j, "ystar");
  if (j.contains("levels")) o.levels = j.at("levels").get<int>();
  o.props = j.value("props", false);
  return o;
}

Outcome run_harness(const Json& opts) {
  const auto generated = opts.value("generated", std::size_t{48});
  const auto seed = opts.value("seed", std::uint32_t{1});
  const auto corpus = harness_corpus(generated, seed);
  const HarnessReport rep = implication_harness(corpus);
  Outcome out;
  out.result["instances"] = rep.instances;
  out.result["named"] = corpus.size() - generated;
  out.result["generated"] = generated;
  out.result["checks"] = rep.checks;
  out.result["violations"] = rep.violations;
  out.exit_code = rep.ok() ? kHolds : kRefuted;
  out.summary = std::to_string(rep.violations.size()) + " violations over " + std::to_string(rep.instances) +
                " instances";
  return out;
}

// Fuzzy separation at 2^-1 .. 2^-levels for each problem; every certificate
// goes through its JSON form before verification.
Outcome run_certify_sweep(const Json& opts, const fs::path& dir) {
  const int levels = opts.value("levels", 6);
  const ConeFlavor flavor = parse_flavor(opts.value("flavor", std::string("frechet")));
  Outcome out;
  Json rows = Json::array();
  std::size_t total = 0, verified = 0;
  for (const auto& name : opts.at("problems")) {
    const auto pf = io::problem_from(io::read_file((dir / name.get<std::string>()).string()));
    const TripleProblem t = pf.triple();
    for (const auto& eps : EpsSchedule::dyadic(levels).levels) {
      ++total;
      Json row;
      row["problem"] = name;
      row["eps"] = io::to_json(eps);
      const auto cert = search_certificates(t, eps, DualCertificate::Kind::FuzzySeparation, flavor);
      row["found"] = cert.has_value();
      bool ok = false;
      if (cert) {
        const std::string text = io::dump(io::to_json(*cert));
        const DualCertificate back = io::cert_from(io::parse_text(text));
        ok = io::dump(io::to_json(back)) == text && verify_fuzzy_separation(back, t.pair(), t.ref()).accepted();
      }
      row["verified"] = ok;
      verified += ok ? 1 : 0;
      rows.push_back(row);
    }
  }
  out.result["total"] = total;
  out.result["verified"] = verified;
  out.result["runs"] = rows;
  out.exit_code = verified == total ? kHolds : kRefuted;
  out.summary = std::to_string(verified) + "/" + std::to_string(total) + " certificates found and re-verified";
  return out;
}

// Dotted path; numeric segments index arrays and a trailing '#' asks for
// the array length.
std::optional<Json> lookup(const Json& j, const std::string& path) {
  const Json* cur = &j;
  std::stringstream ss(path);
  std::string seg;
  while (std::getline(ss, seg, '.')) {
    bool count = false;
    if (!seg.empty() && seg.back() == '#') {
      count = true;
      seg.pop_back();
    }
    if (cur->is_array()) {
      if (seg.empty() || seg.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
      const std::size_t i = std::stoul(seg);
      if (i >= cur->size()) return std::nullopt;
      cur = &(*cur)[i];
    } else if (cur->is_object()) {
      const auto it = cur->find(seg);
      if (it == cur->end()) return std::nullopt;
      cur = &*it;
    } else {
      return std::nullopt;
    }
    if (count) {
      if (!cur->is_array()) return std::nullopt;
      return Json(cur->size());
    }
  }
  return *cur;
}

bool selected(const Json& c, const std::string& filter) {
  if (filter.empty()) return true;
  const std::string name = c.at("name").get<std::string>();
  if (name.rfind(filter, 0) == 0) return true;
  for (const auto& t : c.value("tags", Json::array())) {
    if (t == filter) return true;
  }
  return false;
}

NormalFn stub_cones() {
  return [](const SetExpr& s, const Vec& x, ConeFlavor) { return NormalCone{s.contains(x), FGCone::zero(s.dim())}; };
}

}  // namespace

Outcome run_corpus(const Options& o, const NormalFn& normal) {
  const fs::path dir = o.corpus_dir.empty() ? fs::path(VEX_CORPUS_DIR) : fs::path(o.corpus_dir);
  NormalFn cones = normal;
  if (o.inject_fault == "cones") {
    cones = stub_cones();
  } else if (!o.inject_fault.empty()) {
    throw MalformedInput("unknown fault '" + o.inject_fault + "'");
  }
  const Json suite = io::read_file((dir / "cases.json").string());
  const Json& cases = suite.at("cases");

  Outcome out;
  Json report;
  report["corpus"] = suite.value("name", std::string("corpus"));
  if (!o.filter.empty()) report["filter"] = o.filter;
  if (!o.inject_fault.empty()) report["inject_fault"] = o.inject_fault;
  Json rows = Json::array();
  std::ostringstream text;
  std::size_t passed = 0, failed = 0;
  std::string first_failure;

  for (const auto& c : cases) {
    if (!selected(c, o.filter)) continue;
    const std::string name = c.at("name").get<std::string>();
    const std::string command = c.at("command").get<std::string>();
    const Json opts = c.value("options", Json::object());
    Outcome r;
    if (command == "harness") {
      r = run_harness(opts);
    } else if (command == "certify-sweep") {
      r = run_certify_sweep(opts, dir);
    } else {
      r = run(command, case_options(opts, dir), cones);
    }

    const Json& expect = c.at("expect");
    Json expected = Json::object(), observed = Json::object();
    std::vector<std::string> mismatches;
    if (expect.contains("exit_code")) {
      expected["exit_code"] = expect.at("exit_code");
      observed["exit_code"] = r.exit_code;
      if (expect.at("exit_code") != r.exit_code) mismatches.push_back("exit_code");
    }
    const Json checks = expect.value("result", Json::object());
    for (const auto& [path, want] : checks.items()) {
      const auto got = lookup(r.result, path);
      expected[path] = want;
      observed[path] = got ? *got : Json();
      if (!got || *got != want) mismatches.push_back(path);
    }
    const bool ok = mismatches.empty();
    (ok ? passed : failed) += 1;
    if (!ok && first_failure.empty()) first_failure = name;

    text << (ok ? "PASS " : "FAIL ") << name << "  [" << r.summary << "]\n";
    for (const auto& m : mismatches) {
      text << "  " << m << ": expected " << expected[m].dump() << ", observed " << observed[m].dump() << "\n";
    }

    Json row;
    row["name"] = name;
    row["tags"] = c.value("tags", Json::array());
    row["command"] = command;
    row["pass"] = ok;
    row["summary"] = r.summary;
    row["expected"] = expected;
    row["observed"] = observed;
    rows.push_back(row);

    if (!o.out.empty()) {
      const fs::path file = fs::path(o.out) / (name + ".json");
      fs::create_directories(file.parent_path());
      std::ofstream f(file, std::ios::binary);
      if (!f) throw MalformedInput("cannot write '" + file.string() + "'");
      f << io::dump(r.result);
      out.artifacts.push_back(file.string());
    }
  }
  if (rows.empty()) throw MalformedInput("no corpus case matches '" + o.filter + "'");

  report["cases"] = rows;
  report["passed"] = passed;
  report["failed"] = failed;
  report["first_failure"] = first_failure.empty() ? Json() : Json(first_failure);
  text << passed << "/" << rows.size() << " cases passed\n";
  if (!first_failure.empty()) text << "first failure: " << first_failure << "\n";

  if (!o.out.empty()) {
    const fs::path file = fs::path(o.out) / "report.json";
    std::ofstream f(file, std::ios::binary);
    if (!f) throw MalformedInput("cannot write '" + file.string() + "'");
    f << io::dump(report);
    out.artifacts.push_back(file.string());
  }
  out.result = report;
  out.result["text"] = text.str();
  out.exit_code = failed == 0 ? kHolds : kRefuted;
  out.summary = failed == 0 ? std::to_string(passed) + " cases passed"
                            : std::to_string(failed) + " of " + std::to_string(rows.size()) +
                                  " cases failed, first: " + first_failure;
  return out;
}

}  // namespace vex::cli
