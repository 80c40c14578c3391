// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "agreement.hpp"
#include "instances.hpp"
#include "vex/cli/commands.hpp"

using namespace vex;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << detail << "\n";
  if (!ok) ++failures;
}

std::string corpus(const std::string& f) { return std::string(VEX_CORPUS_DIR) + "/" + f; }

TripleProblem load_triple(const std::string& f) { return io::problem_from(io::read_file(corpus(f))).triple(); }

cli::Options problem(const std::string& f) {
  cli::Options o;
  o.problem = corpus(f);
  return o;
}

Rational q(long n, long d = 1) { return Rational(n, d); }

const EpsSchedule kSched = EpsSchedule::dyadic(12);

void criterion1() {
  cli::Options o;
  o.corpus_dir = VEX_CORPUS_DIR;
  o.filter = "example-3.1";
  const auto c = cli::run("corpus", o);
  bool ok = c.exit_code == cli::kHolds && c.result["cases"].size() == 7;

  const auto f1 = check_triple(load_triple("f1.json"), Property::Extremal, kSched);
  ok = ok && f1.holds() && f1.rho->is_pos_inf();

  const auto f2p = io::problem_from(io::read_file(corpus("f2.json")));
  const auto f2 = check_triple(f2p.triple(), Property::Extremal, kSched);
  ok = ok && f2.holds() && f2.rho->is_finite();
  SearchConfig at_inf;
  at_inf.rho_only = ExtRational::pos_inf();
  at_inf.templates = f2p.templates;
  const auto f2inf = check_triple(f2p.triple(), Property::Extremal, kSched, at_inf);
  ok = ok && f2inf.refuted();

  const auto f3 = load_triple("f3.json");
  ok = ok && check_triple(f3, Property::Stationary, kSched).holds() &&
       check_triple(f3, Property::Extremal, kSched).refuted();

  const auto f4 = load_triple("f4.json");
  const auto st = check_triple(f4, Property::Stationary, kSched);
  ok = ok && check_triple(f4, Property::ApproxStationary, kSched).holds() && st.refuted() && st.eps_star &&
       *st.eps_star == q(1, 2) && !st.evidence.empty();
  // every refutation point sits at t = 3ρ/4 along the diagonal
  for (const auto& e : st.evidence) {
    const Rational t = q(3, 4) * e.rho.value();
    ok = ok && e.point == Vec{-t, -t} && verify_evidence(f4.pair(), f4.ref(), Property::Stationary, e);
  }
  report(1, ok,
         "F1 extremal rho=inf; F2 extremal rho=" + f2.rho->str() + ", refuted at rho=inf; F3 stationary, not extremal; "
         "F4 approx-stationary, stationary refuted at eps*=1/2 via t=3rho/4");
}

void criterion2() {
  cli::Options o = problem("f4.json");
  o.x = "1/200";
  o.y = "-1/40000";
  o.ystar = "1";
  const auto c = cli::run("coderivative", o);
  bool ok = c.exit_code == cli::kHolds && c.result["coderivative"]["kind"] == "point" &&
            c.result["coderivative"]["point"] == io::Json::array({"-1/100"});
  cli::Options v = problem("f4.json");
  v.cert_file = corpus("example-3.3-multiplier.json");
  const auto acc = cli::run("verify-cert", v);
  v.eps = "1/200";
  const auto rej = cli::run("verify-cert", v);
  ok = ok && acc.exit_code == cli::kHolds && rej.exit_code == cli::kRefuted;
  report(2, ok, "D*F4(1/200,-1/40000)(1) = {-1/100}; certificate accepted at 1/4, rejected at 1/200 (" +
                    rej.summary + ")");
}

void criterion3() {
  const std::vector<SetFamily> fams{SetFamily::finite(1, {SetExpr::singleton(Vec{0})}),
                                    SetFamily::singleton_seq(Vec{0}, Vec{1})};
  const auto v = check_collection(fams, Vec{0}, Property::Extremal, kSched);
  bool ok = v.holds() && v.rho && v.rho->is_pos_inf() && v.witnesses.size() == kSched.levels.size();
  for (std::size_t i = 0; ok && i < v.witnesses.size(); ++i) {
    ok = v.witnesses[i].eps == kSched.levels[i] && v.witnesses[i].rho.is_pos_inf() &&
         verify_witness(fams, Vec{0}, Property::Extremal, v.witnesses[i]);
  }
  report(3, ok, "Example 1.1 extremal with rho=inf at all " + std::to_string(kSched.levels.size()) + " levels");
}

void criterion4() {
  bool ok = true;
  const std::vector<std::pair<LevelSetMapping, Vec>> cases{
      {LevelSetMapping::singleton_map(1), Vec{0}},
      {LevelSetMapping::strict_pareto(2, Vec{0, 0}), Vec{0, 0}},
  };
  for (const auto& [l, y] : cases) {
    const auto r = check_o_properties(l, y);
    ok = ok && r.o(4).verdict == OVerdict::Holds && r.o(5).verdict == OVerdict::Holds && r.o(1).fails() &&
         r.o(2).fails() && verify_o_failure(l, y, 1, r.o(1)) && verify_o_failure(l, y, 2, r.o(2));
  }
  report(4, ok, "Examples 4.1/4.2: O4 Holds, O5 Holds, O1 Fails, O2 Fails, failures verified");
}

void criterion5() {
  const auto corpus = harness_corpus(48, 20240611);
  const auto rep = implication_harness(corpus);
  report(5, rep.ok() && rep.instances >= 50,
         std::to_string(rep.instances) + " instances, " + std::to_string(rep.checks) + " implication checks, " +
             std::to_string(rep.violations.size()) + " violations");
}

void criterion6() {
  struct Inst {
    std::vector<SetFamily> fams;
    Vec ref;
  };
  std::vector<Inst> insts;
  for (int i = 1; i <= 4; ++i) {
    const auto t = inst::triple(i);
    insts.push_back({t.pair(), t.ref()});
  }
  insts.push_back({{SetFamily::finite(1, {SetExpr::singleton(Vec{0})}), SetFamily::singleton_seq(Vec{0}, Vec{1})},
                   Vec{0}});
  const auto sched = EpsSchedule::dyadic(8);
  int tried = 0, ok = 0;
  for (const auto& in : insts) {
    const auto e = check_collection(in.fams, in.ref, Property::Extremal, sched);
    if (e.holds()) {
      for (const auto& w : e.witnesses) {
        ++tried;
        const auto st = extremal_to_stationary(in.fams, in.ref, *e.rho, w.eps);
        if (st && verify_witness(in.fams, in.ref, Property::Stationary, *st) &&
            verify_witness(in.fams, in.ref, Property::ApproxStationary, stationary_to_approx(*st, in.ref))) {
          ++ok;
        }
      }
    }
    const auto s = check_collection(in.fams, in.ref, Property::Stationary, sched);
    if (s.holds()) {
      for (const auto& w : s.witnesses) {
        ++tried;
        if (verify_witness(in.fams, in.ref, Property::ApproxStationary, stationary_to_approx(w, in.ref))) ++ok;
      }
    }
  }
  report(6, tried > 0 && ok == tried, std::to_string(ok) + "/" + std::to_string(tried) + " conversions re-verified");
}

void criterion7() {
  cli::Options o;
  o.corpus_dir = VEX_CORPUS_DIR;
  o.filter = "separation";
  const auto c = cli::run("corpus", o);
  int found = 0;
  for (int i = 1; i <= 4; ++i) {
    const auto t = inst::triple(i);
    if (!check_triple(t, Property::ApproxStationary, EpsSchedule::dyadic(6)).holds()) continue;
    for (const auto& eps : EpsSchedule::dyadic(6).levels) {
      const auto cert = search_certificates(t, eps, DualCertificate::Kind::FuzzySeparation, ConeFlavor::Frechet);
      if (!cert) continue;
      const auto back = io::cert_from(io::parse_text(io::dump(io::to_json(*cert))));
      if (verify_fuzzy_separation(back, t.pair(), t.ref()).accepted()) ++found;
    }
  }
  report(7, found == 24 && c.exit_code == cli::kHolds,
         std::to_string(found) + "/24 fuzzy separation certificates found and round-tripped");
}

void criterion8() {
  std::vector<MultiProblem> insts;
  for (int i = 1; i <= 4; ++i) insts.push_back(as_multi(inst::triple(i)));
  const auto diag = MappingExpr::polyhedral_graph(1, 1, SetExpr::polyhedron(HPolyhedron(2, {{Vec{1, -1}, Rel::Eq, 0}})));
  const auto ray = SetExpr::polyhedron(HPolyhedron(1, {{Vec{-1}, Rel::Le, 0}}));
  insts.push_back(MultiProblem::make({diag}, {inst::halflines()}, ray, Vec{0}, {Vec{0}}));
  insts.push_back(MultiProblem::make({inst::F(4), inst::F(2)}, {inst::halflines(), inst::halflines()},
                                     SetExpr::space(1), Vec{0}, {Vec{0}, Vec{0}}));
  int holding = 0;
  std::size_t tuples = 0;
  bool ok = true;
  const auto grid = EpsSchedule::dyadic(6).levels;
  for (const auto& p : insts) {
    const auto qc = check_qc(p, ConeFlavor::Frechet, grid);
    if (qc.status != QCReport::Status::HoldsWithEps) continue;
    ++holding;
    std::vector<Rational> below;
    for (const auto& e : grid) {
      if (e <= qc.eps) below.push_back(e);
    }
    const auto adv = adversarial_singular_search(p, below, ConeFlavor::Frechet, 10000);
    tuples += adv.tuples_tried;
    ok = ok && !adv.found;
  }
  report(8, ok && holding >= 5,
         std::to_string(holding) + " instances with QC, " + std::to_string(tuples) +
             " adversarial tuples, no singular certificate");
}

void criterion9() {
  const auto r = aubin_estimate(inst::F(4), Vec{0}, Vec{0}, q(1, 4));
  std::map<std::string, bool> points;
  bool clean = true;
  for (const auto& a : r.audit) {
    points[to_string(a.point)] = true;
    // independent recomputation of both sides
    Rational lhs, rhs;
    for (std::size_t j = 0; j < a.normal.size(); ++j) (j == 0 ? lhs : rhs) += a.normal[j].abs();
    clean = clean && a.ok && lhs <= *r.tau_upper * rhs;
  }
  const auto r1 = aubin_estimate(inst::F(1), Vec{0}, Vec{0}, q(1, 4));
  const bool ok = r.tau_upper && *r.tau_upper == 1 && points.size() == 50 && clean && r1.tau_upper &&
                  r1.tau_upper->is_zero();
  report(9, ok,
         "F4 tau_upper=" + (r.tau_upper ? r.tau_upper->str() : std::string("none")) + ", " +
             std::to_string(r.audit.size()) + " normals at " + std::to_string(points.size()) +
             " points, F1 tau_upper=" + (r1.tau_upper ? r1.tau_upper->str() : std::string("none")));
}

void criterion10() {
  const auto s = agreement::run(2024, 100);
  report(10, s.errors.empty() && s.points == 100 && s.kinks >= 20,
         std::to_string(s.points) + " points (" + std::to_string(s.kinks) + " kinks), " +
             std::to_string(s.members_checked) + " members admitted, " + std::to_string(s.violators_checked) +
             " violators excluded, " + std::to_string(s.errors.size()) + " disagreements");
}

void criterion11() {
  const auto sched = EpsSchedule::dyadic(6);
  const auto down = LevelSetMapping::cone_translation(inst::halfline_le(0), Vec{0});
  std::mt19937 rng(7);
  auto pick = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<unsigned>(hi - lo + 1)); };
  int certified = 0, confirmed = 0, violations = 0;
  for (int i = 0; i < 20; ++i) {
    const Rational left(pick(-4, 4), pick(1, 3)), right(pick(-4, 4), pick(1, 3));
    const PQFunction f({0}, {Quadratic{0, left, 0}, Quadratic{0, right, 0}});
    const auto r =
        bridge_extremal_point(MappingExpr::epigraphical(f), SetExpr::space(1), down, Vec{0}, Vec{0}, q(1), sched);
    if (r.status != BridgeReport::Status::HypothesisUnmet) ++certified;
    if (r.status == BridgeReport::Status::Confirmed) ++confirmed;
    if (r.status == BridgeReport::Status::Violation) ++violations;
  }
  report(11, certified == 20 && violations == 0,
         std::to_string(certified) + " instances with O1/O5, " + std::to_string(confirmed) +
             " extremal points confirmed, " + std::to_string(violations) + " violations");
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    out[fs::relative(e.path(), root).string()] = ss.str();
  }
  return out;
}

void criterion12() {
  const fs::path base = fs::temp_directory_path() / "vex-acceptance";
  fs::remove_all(base);
  std::vector<std::map<std::string, std::string>> trees;
  bool ok = true;
  for (const char* run : {"a", "b"}) {
    cli::Options o;
    o.corpus_dir = VEX_CORPUS_DIR;
    o.out = (base / run).string();
    ok = ok && cli::run("corpus", o).exit_code == cli::kHolds;
    trees.push_back(tree(base / run));
  }
  ok = ok && !trees[0].empty() && trees[0] == trees[1];
  fs::remove_all(base);
  report(12, ok, "two corpus runs wrote " + std::to_string(trees[0].size()) + " byte-identical files");
}

}  // namespace

int main() {
  const std::vector<void (*)()> criteria{criterion1, criterion2, criterion3, criterion4,  criterion5,  criterion6,
                                         criterion7, criterion8, criterion9, criterion10, criterion11, criterion12};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, std::string("exception: ") + e.what());
    }
  }
  return failures == 0 ? 0 : 1;
}
