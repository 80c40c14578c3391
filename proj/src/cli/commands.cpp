#include "vex/cli/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "corpus.hpp"
#include "vex/core/errors.hpp"

namespace vex::cli {

namespace {

using io::ProblemFile;

io::ProblemFile load_problem(const Options& o) {
  if (o.problem.empty()) throw MalformedInput("missing --problem");
  return io::problem_from(io::read_file(o.problem));
}

Rational required_rational(const std::optional<std::string>& s, const char* flag) {
  if (!s) throw MalformedInput(std::string("missing ") + flag);
  return Rational::parse(*s);
}

Vec required_vec(const std::string& s, const char* flag) {
  if (s.empty()) throw MalformedInput(std::string("missing ") + flag);
  return io::parse_vec_list(s);
}

SearchConfig search_config(const RunConfig& cfg, const ProblemFile& pf, const Options& o) {
  SearchConfig sc;
  sc.budget = cfg.budget;
  sc.grid_depth = cfg.grid_depth;
  sc.templates = pf.templates;
  if (o.rho) sc.rho_only = ExtRational::parse(*o.rho);
  return sc;
}

int verdict_exit(CheckVerdict::Outcome o) {
  switch (o) {
    case CheckVerdict::Outcome::HoldsOnSchedule: return kHolds;
    case CheckVerdict::Outcome::RefutedOnGrid: return kRefuted;
    case CheckVerdict::Outcome::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

Outcome from_verdict(const CheckVerdict& v) {
  Outcome out;
  out.result = io::to_json(v);
  out.exit_code = verdict_exit(v.outcome);
  out.summary = property_str(v.property) + ": " + outcome_str(v.outcome);
  if (v.rho) out.summary += " (rho = " + v.rho->str() + ")";
  if (v.eps_star) out.summary += " (eps* = " + v.eps_star->str() + ")";
  return out;
}

Outcome cmd_check(const Options& o, const RunConfig& cfg) {
  const ProblemFile pf = load_problem(o);
  const Property prop = parse_property(o.property);
  const auto sched = EpsSchedule::dyadic(cfg.schedule_depth);
  const SearchConfig sc = search_config(cfg, pf, o);

  if (prop == Property::ExtremalPoint) {
    if (!pf.levelset) throw MalformedInput("extremal-point needs a levelset in the problem file");
    if (pf.mappings.size() != 1) throw MalformedInput("extremal-point needs a single mapping");
    const auto grid = sc.rho_only ? std::vector<ExtRational>{*sc.rho_only} : rho_grid(cfg.grid_depth);
    return from_verdict(
        check_extremal_point(pf.mappings[0], *pf.omega, *pf.levelset, pf.x_bar, pf.y_bars[0], grid));
  }
  switch (pf.kind) {
    case ProblemFile::Kind::Triple: return from_verdict(check_triple(pf.triple(), prop, sched, sc));
    case ProblemFile::Kind::Collection:
      return from_verdict(check_collection(pf.families, pf.x_bar, prop, sched, sc));
    case ProblemFile::Kind::Multi: {
      if (prop != Property::ApproxStationary) {
        throw MalformedInput("several mappings support only --property approx-stationary");
      }
      const MultiVerdict v = check_multi(pf.multi(), sched, sc);
      Outcome out;
      out.result = io::to_json(v);
      out.exit_code = verdict_exit(v.outcome);
      out.summary = "approx-stationary: " + outcome_str(v.outcome);
      return out;
    }
  }
  throw MalformedInput("unknown problem kind");
}

Outcome cmd_cones(const Options& o, const NormalFn& normal) {
  const ConeFlavor flavor = parse_flavor(o.flavor);
  const Vec point = required_vec(o.point, "--point");
  SetExpr set = SetExpr::space(point.size());
  if (!o.set_file.empty()) {
    set = io::set_from(io::read_file(o.set_file));
  } else {
    const ProblemFile pf = load_problem(o);
    if (pf.mappings.empty()) throw MalformedInput("problem has no mapping; pass --set");
    set = pf.mappings[0].graph();
  }
  if (set.dim() != point.size()) throw MalformedInput("--point dimension differs from the set");
  const NormalCone n = normal(set, point, flavor);
  Outcome out;
  out.result["flavor"] = flavor_str(flavor);
  out.result["point"] = io::to_json(point);
  out.result["in_set"] = n.in_set;
  out.result["normal"] = io::to_json(n.cone);
  Json rows = Json::array();
  for (const auto& r : h_rows_of(n.cone)) rows.push_back(io::to_json(r));
  out.result["h_rows"] = rows;
  out.exit_code = kHolds;
  out.summary = n.in_set ? "normal cone with " + std::to_string(n.cone.generators.size()) + " generators and " +
                               std::to_string(n.cone.lineality.size()) + " lineality directions"
                         : "point outside the set";
  return out;
}

Outcome cmd_coderivative(const Options& o, const NormalFn& normal) {
  const ProblemFile pf = load_problem(o);
  if (pf.mappings.empty()) throw MalformedInput("problem has no mapping");
  const MappingExpr& F = pf.mappings[0];
  const ConeFlavor flavor = parse_flavor(o.flavor);
  const Vec x = o.x.empty() ? pf.x_bar : io::parse_vec_list(o.x);
  const Vec y = o.y.empty() ? pf.y_bars[0] : io::parse_vec_list(o.y);
  const Vec ys = required_vec(o.ystar, "--ystar");
  if (x.size() != F.x_dim() || y.size() != F.y_dim() || ys.size() != F.y_dim()) {
    throw MalformedInput("coderivative: dimension mismatch");
  }
  const NormalCone n = normal(F.graph(), concat(x, y), flavor);
  if (!n.in_set) throw NotInGraph("(" + to_string(x) + ", " + to_string(y) + ") is not in the graph");
  const CoderivativeResult c = slice_coderivative(n.cone, F.x_dim(), ys);
  Outcome out;
  out.result["flavor"] = flavor_str(flavor);
  out.result["x"] = io::to_json(x);
  out.result["y"] = io::to_json(y);
  out.result["ystar"] = io::to_json(ys);
  out.result["coderivative"] = io::to_json(c);
  out.exit_code = kHolds;
  out.summary = "D*F(" + to_string(x) + ", " + to_string(y) + ")(" + to_string(ys) + ") = " + c.describe();
  return out;
}

Outcome cmd_certify(const Options& o, const RunConfig& cfg) {
  const ProblemFile pf = load_problem(o);
  const Rational eps = required_rational(o.eps, "--eps");
  const auto kind = parse_cert_kind(o.kind);
  const ConeFlavor flavor = parse_flavor(o.flavor);
  CertSearchConfig sc;
  sc.grid_depth = cfg.grid_depth;
  std::optional<DualCertificate> cert;
  if (pf.kind == ProblemFile::Kind::Multi) {
    if (kind != DualCertificate::Kind::Singular) throw MalformedInput("several mappings: only --kind singular");
    cert = search_singular(pf.multi(), eps, flavor, sc);
  } else {
    cert = search_certificates(pf.triple(), eps, kind, flavor, sc);
  }
  Outcome out;
  if (!cert) {
    out.result["kind"] = cert_kind_str(kind);
    out.result["eps"] = io::to_json(eps);
    out.result["status"] = "NotFound";
    out.exit_code = kInconclusive;
    out.summary = cert_kind_str(kind) + " certificate not found at eps = " + eps.str();
    return out;
  }
  out.result = io::to_json(*cert);
  out.exit_code = kHolds;
  out.summary = cert_kind_str(kind) + " certificate found at eps = " + eps.str();
  return out;
}

CertReport verify_any(const DualCertificate& c, const ProblemFile& pf) {
  switch (c.kind) {
    case DualCertificate::Kind::FuzzySeparation:
      if (pf.kind == ProblemFile::Kind::Collection) return verify_fuzzy_separation(c, pf.families, pf.x_bar);
      if (pf.kind == ProblemFile::Kind::Triple) {
        const auto t = pf.triple();
        return verify_fuzzy_separation(c, t.pair(), t.ref());
      }
      throw MalformedInput("separation certificates need a triple or a collection");
    case DualCertificate::Kind::MultiplierRule: return verify_multiplier_rule(c, pf.multi());
    case DualCertificate::Kind::Singular: return verify_singular(c, pf.multi());
  }
  throw MalformedInput("unknown certificate kind");
}

Outcome cmd_verify(const Options& o) {
  const ProblemFile pf = load_problem(o);
  if (o.cert_file.empty()) throw MalformedInput("missing --cert");
  DualCertificate c = io::cert_from(io::read_file(o.cert_file));
  if (o.eps) c.eps = Rational::parse(*o.eps);
  const CertReport r = verify_any(c, pf);
  Outcome out;
  out.result["kind"] = cert_kind_str(c.kind);
  out.result["eps"] = io::to_json(c.eps);
  const Json rj = io::to_json(r);
  out.result["status"] = rj["status"];
  out.result["failures"] = rj["failures"];
  switch (r.status) {
    case CertReport::Status::Accepted: out.exit_code = kHolds; break;
    case CertReport::Status::Rejected: out.exit_code = kRefuted; break;
    case CertReport::Status::Inconclusive: out.exit_code = kInconclusive; break;
  }
  out.summary = out.result["status"].get<std::string>() + " at eps = " + c.eps.str();
  if (!r.failures.empty()) out.summary += " (first failure: " + r.first_failure() + ")";
  return out;
}

Outcome cmd_qc(const Options& o, const RunConfig& cfg) {
  const ProblemFile pf = load_problem(o);
  const ConeFlavor flavor = parse_flavor(o.flavor);
  const Rational delta = o.delta ? Rational::parse(*o.delta) : Rational(1, 2);
  const QCReport r = check_qc(pf.multi(), flavor, EpsSchedule::dyadic(cfg.schedule_depth).levels, delta);
  Outcome out;
  out.result = io::to_json(r);
  switch (r.status) {
    case QCReport::Status::HoldsWithEps: out.exit_code = kHolds; break;
    case QCReport::Status::ViolatedBy: out.exit_code = kRefuted; break;
    case QCReport::Status::Inconclusive: out.exit_code = kInconclusive; break;
  }
  out.summary = "qc " + flavor_str(flavor) + ": " + qc_status_str(r.status);
  if (r.status == QCReport::Status::HoldsWithEps) out.summary += " (eps = " + r.eps.str() + ")";
  return out;
}

Outcome cmd_aubin(const Options& o) {
  const ProblemFile pf = load_problem(o);
  if (pf.mappings.size() != 1) throw MalformedInput("aubin needs a single mapping");
  const Rational delta = o.delta ? Rational::parse(*o.delta) : Rational(1, 2);
  const AubinReport r = aubin_estimate(pf.mappings[0], pf.x_bar, pf.y_bars[0], delta);
  Outcome out;
  out.result = io::to_json(r);
  if (!r.tau_upper) {
    out.exit_code = kInconclusive;
    out.summary = "no modulus bound: " + r.note;
  } else {
    out.exit_code = r.audit_ok() ? kHolds : kRefuted;
    out.summary = "tau_upper = " + r.tau_upper->str() + ", audit " + (r.audit_ok() ? "clean" : "violated");
  }
  return out;
}

Outcome cmd_levelset(const Options& o) {
  if (o.mapping_file.empty()) throw MalformedInput("missing --mapping");
  const LevelSetMapping l = io::levelset_from(io::read_file(o.mapping_file));
  const Vec y = required_vec(o.point, "--point");
  if (y.size() != l.dim()) throw MalformedInput("--point dimension differs from the level-set mapping");
  Outcome out;
  out.result["levelset"] = io::to_json(l);
  out.result["point"] = io::to_json(y);
  out.result["L"] = io::to_json(l.at(y));
  out.result["L_circ"] = io::to_json(l_circ(l, y));
  out.result["L_minus"] = io::to_json(l_minus(l, y));
  out.exit_code = kHolds;
  out.summary = "level sets at " + to_string(y);
  if (!o.props) return out;

  const OPropertyReport r = check_o_properties(l, y);
  const Json pr = io::to_json(r);
  out.result["grid"] = pr["grid"];
  out.result["properties"] = pr["properties"];
  std::string line;
  for (int i = 1; i <= 6; ++i) {
    const OResult& oi = r.o(i);
    const std::string key = "O" + std::to_string(i);
    if (oi.fails()) out.result["properties"][key]["verified"] = verify_o_failure(l, y, i, oi);
    if (oi.verdict == OVerdict::Inconclusive) out.exit_code = kInconclusive;
    line += (line.empty() ? "" : ", ") + key + " " + o_verdict_str(oi.verdict);
  }
  out.summary = line;
  return out;
}

std::string fnv_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

}  // namespace

RunConfig run_config(const Options& o) {
  RunConfig c;
  if (o.levels) {
    if (*o.levels < 1 || *o.levels > 64) throw MalformedInput("--levels must lie in 1..64");
    c.schedule_depth = *o.levels;
  }
  if (const char* env = std::getenv("VEX_GRID_DEPTH")) {
    char* end = nullptr;
    const long d = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || d < 1 || d > 30) throw MalformedInput("VEX_GRID_DEPTH must be an integer in 1..30");
    c.grid_depth = static_cast<int>(d);
  }
  return c;
}

Outcome run(const std::string& command, const Options& o, const NormalFn& normal) {
  try {
    const RunConfig cfg = run_config(o);
    if (command == "check") return cmd_check(o, cfg);
    if (command == "cones") return cmd_cones(o, normal);
    if (command == "coderivative") return cmd_coderivative(o, normal);
    if (command == "certify") return cmd_certify(o, cfg);
    if (command == "verify-cert") return cmd_verify(o);
    if (command == "qc") return cmd_qc(o, cfg);
    if (command == "aubin") return cmd_aubin(o);
    if (command == "levelset") return cmd_levelset(o);
    if (command == "corpus") return run_corpus(o, normal);
    throw MalformedInput("unknown command '" + command + "'");
  } catch (const MalformedInput& e) {
    return {kInputError, e.what(), Json{{"error", e.what()}}, {}};
  } catch (const NotInGraph& e) {
    return {kInputError, e.what(), Json{{"error", e.what()}}, {}};
  } catch (const Json::exception& e) {
    const std::string msg = std::string("schema: ") + e.what();
    return {kInputError, msg, Json{{"error", msg}}, {}};
  } catch (const Error& e) {
    // UnsupportedClass, NonRationalValue: the question stays open.
    const std::string msg = e.what();
    return {kInconclusive, "Inconclusive: " + msg, Json{{"outcome", "Inconclusive"}, {"reason", msg}}, {}};
  }
}

Json options_json(const std::string& command, const Options& o) {
  Json j;
  j["command"] = command;
  auto put = [&](const char* k, const std::string& v) {
    if (!v.empty()) j[k] = v;
  };
  auto put_opt = [&](const char* k, const std::optional<std::string>& v) {
    if (v) j[k] = *v;
  };
  put("problem", o.problem);
  j["property"] = o.property;
  j["flavor"] = o.flavor;
  j["kind"] = o.kind;
  put_opt("eps", o.eps);
  put_opt("rho", o.rho);
  put_opt("delta", o.delta);
  put("point", o.point);
  put("x", o.x);
  put("y", o.y);
  put("ystar", o.ystar);
  put("set", o.set_file);
  put("mapping", o.mapping_file);
  put("cert", o.cert_file);
  if (o.props) j["props"] = true;
  put("out", o.out);
  put("filter", o.filter);
  put("corpus_dir", o.corpus_dir);
  put("inject_fault", o.inject_fault);
  return j;
}

std::string config_hash(const Json& config) { return fnv_hex(config.dump()); }

int execute(const std::string& command, const Options& o, std::ostream& out, std::ostream& err) {
  const Outcome r = run(command, o, normal_cone);
  std::vector<std::string> artifacts = r.artifacts;
  // The corpus writes its own tree under --out; everything else writes one file.
  if (command != "corpus") {
    const std::string text = io::dump(r.result);
    if (o.out.empty()) {
      out << text;
    } else {
      std::ofstream f(o.out, std::ios::binary);
      if (!f) {
        err << "vex: cannot write '" << o.out << "'\n";
        return kInputError;
      }
      f << text;
      artifacts.insert(artifacts.begin(), o.out);
    }
  } else {
    out << r.result.value("text", std::string());
  }
  if (r.exit_code == kInputError) {
    err << "vex: " << r.summary << "\n";
  } else {
    err << r.summary << "\n";
  }

  if (!o.manifest.empty()) {
    Json m;
    Json config = options_json(command, o);
    RunConfig cfg;
    try {
      cfg = run_config(o);
    } catch (const Error&) {
    }
    config["schedule_depth"] = cfg.schedule_depth;
    config["grid_depth"] = cfg.grid_depth;
    config["budget"] = cfg.budget;
    m["command"] = command;
    m["config"] = config;
    m["config_hash"] = config_hash(config);
    Json levels = Json::array();
    for (const auto& e : EpsSchedule::dyadic(cfg.schedule_depth).levels) levels.push_back(io::to_json(e));
    m["schedule"] = levels;
    m["grid"] = {{"depth", cfg.grid_depth}, {"denominator", io::to_json(pow2(cfg.grid_depth))}};
    m["budget"] = cfg.budget;
    m["outcome"] = r.summary;
    m["exit_code"] = r.exit_code;
    m["artifacts"] = artifacts;
    std::ofstream f(o.manifest, std::ios::binary);
    if (!f) {
      err << "vex: cannot write '" << o.manifest << "'\n";
      return kInputError;
    }
    f << io::dump(m);
  }
  return r.exit_code;
}

}  // namespace vex::cli
