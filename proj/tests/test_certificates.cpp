#include "doctest.h"
#include "instances.hpp"
#include "vex/certificates/certificate.hpp"
#include "vex/core/errors.hpp"

using namespace vex;
using inst::triple;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

MemberParam t_param(const Rational& t) { return MemberParam::of_scalar(t); }

// Example 3.3 normal data (-t, -1) and (0, 1) at t = 1/100, scaled by 100/201.
DualCertificate f4_fuzzy(const Rational& eps) {
  DualCertificate c;
  c.kind = DualCertificate::Kind::FuzzySeparation;
  c.eps = eps;
  c.tuples.push_back({"family", 0, MemberParam::of_index(0), Vec{q(1, 200), q(-1, 40000)}, Vec{q(-1, 201), q(-100, 201)}});
  c.tuples.push_back({"family", 1, t_param(q(-1, 100)), Vec{0, q(-1, 100)}, Vec{0, q(100, 201)}});
  return c;
}

DualCertificate f4_multiplier(const Rational& eps) {
  DualCertificate c;
  c.kind = DualCertificate::Kind::MultiplierRule;
  c.eps = eps;
  c.M = 1;
  c.y_stars = {Vec{1}};
  c.tuples.push_back({"graph", 0, std::nullopt, Vec{q(1, 200), q(-1, 40000)}, Vec{q(-1, 100)}});
  c.tuples.push_back({"omega", 0, std::nullopt, Vec{0}, Vec{0}});
  c.tuples.push_back({"member", 0, t_param(q(-1, 100)), Vec{q(-1, 100)}, Vec{1}});
  return c;
}

bool has(const CertReport& r, const std::string& clause) {
  return std::find(r.failures.begin(), r.failures.end(), clause) != r.failures.end();
}

// Independent sum and normalization arithmetic for a covector list.
std::pair<Rational, Rational> norms(const std::vector<Vec>& cs) {
  Vec s(cs.front().size());
  Rational total;
  for (const auto& c : cs) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      s[j] += c[j];
      total += c[j].abs();
    }
  }
  Rational sn;
  for (const auto& v : s) sn += v.abs();
  return {sn, total};
}

MappingExpr identity_graph() {
  return MappingExpr::polyhedral_graph(1, 1, SetExpr::polyhedron(HPolyhedron(2, {{Vec{1, -1}, Rel::Eq, 0}})));
}

SetExpr nonneg() { return SetExpr::polyhedron(HPolyhedron(1, {{Vec{-1}, Rel::Le, 0}})); }

}  // namespace

TEST_CASE("fuzzy separation: Example 3.3 certificate") {
  const auto p = triple(4);
  const auto ok = verify_fuzzy_separation(f4_fuzzy(q(1, 4)), p.pair(), p.ref());
  CHECK(ok.accepted());
  const auto [sum, total] = norms({Vec{q(-1, 201), q(-100, 201)}, Vec{0, q(100, 201)}});
  CHECK(sum == q(1, 201));
  CHECK(total == 1);

  const auto tight = verify_fuzzy_separation(f4_fuzzy(q(1, 300)), p.pair(), p.ref());
  CHECK(tight.status == CertReport::Status::Rejected);
  CHECK(has(tight, "sum"));

  auto zero = f4_fuzzy(q(1, 4));
  for (auto& t : zero.tuples) t.covector = Vec{0, 0};
  const auto z = verify_fuzzy_separation(zero, p.pair(), p.ref());
  CHECK_FALSE(z.accepted());
  CHECK(z.failures == std::vector<std::string>{"normalization"});
}

TEST_CASE("fuzzy separation: scaling breaks only the normalization") {
  const auto p = triple(4);
  for (const Rational& lambda : {q(1, 2), q(2), q(3, 7)}) {
    auto c = f4_fuzzy(q(1, 4));
    for (auto& t : c.tuples) t.covector = scale(t.covector, lambda);
    const auto r = verify_fuzzy_separation(c, p.pair(), p.ref());
    CHECK(r.failures == std::vector<std::string>{"normalization"});
    for (auto& t : c.tuples) t.covector = scale(t.covector, lambda.inverse());
    CHECK(verify_fuzzy_separation(c, p.pair(), p.ref()).accepted());
  }
}

TEST_CASE("fuzzy separation: wrong cone and malformed layout") {
  const auto p = triple(4);
  auto c = f4_fuzzy(q(1, 4));
  c.tuples[1].covector = Vec{0, q(-100, 201)};  // outward normal of (-inf, t] points up
  CHECK(has(verify_fuzzy_separation(c, p.pair(), p.ref()), "normal-cone[1]"));
  auto d = f4_fuzzy(q(1, 4));
  d.tuples.pop_back();
  CHECK(verify_fuzzy_separation(d, p.pair(), p.ref()).failures == std::vector<std::string>{"shape"});
}

TEST_CASE("multiplier rule: Example 3.3 with M = 1") {
  const auto p = as_multi(triple(4));
  CHECK(verify_multiplier_rule(f4_multiplier(q(1, 4)), p).accepted());
  const auto r = verify_multiplier_rule(f4_multiplier(q(1, 200)), p);
  CHECK(r.status == CertReport::Status::Rejected);
  CHECK(has(r, "inclusion"));

  // Empty covectors are decided by LP.
  auto open = f4_multiplier(q(1, 4));
  for (auto& t : open.tuples) t.covector.clear();
  CHECK(verify_multiplier_rule(open, p).accepted());
  auto open_tight = f4_multiplier(q(1, 200));
  open_tight.tuples[0].point = Vec{q(1, 400), q(-1, 160000)};
  open_tight.tuples[2].point = Vec{q(-1, 400)};
  open_tight.tuples[2].param = t_param(q(-1, 400));
  for (auto& t : open_tight.tuples) t.covector.clear();
  // slope -1/200 at x = 1/400 gives |x1*| = 1/200, not below 1/200
  CHECK(has(verify_multiplier_rule(open_tight, p), "inclusion"));

  auto bad_norm = f4_multiplier(q(1, 4));
  bad_norm.y_stars = {Vec{q(1, 2)}};
  CHECK(has(verify_multiplier_rule(bad_norm, p), "y-norm"));
}

TEST_CASE("multiplier rule for two mappings") {
  const auto p = MultiProblem::make({inst::F(4), inst::F(4)}, {inst::halflines(), inst::halflines()},
                                    SetExpr::space(1), Vec{0}, {Vec{0}, Vec{0}});
  const Vec g{q(1, 200), q(-1, 40000)};
  auto build = [&](const Rational& y1, const Rational& y2) {
    DualCertificate c;
    c.kind = DualCertificate::Kind::MultiplierRule;
    c.eps = q(1, 4);
    c.M = 1;
    c.y_stars = {Vec{y1}, Vec{y2}};
    // x_i* = slope · y_i* with slope -1/100 at x = 1/200
    c.tuples.push_back({"graph", 0, std::nullopt, g, Vec{q(-1, 100) * y1}});
    c.tuples.push_back({"graph", 1, std::nullopt, g, Vec{q(-1, 100) * y2}});
    c.tuples.push_back({"omega", 0, std::nullopt, Vec{0}, Vec{0}});
    c.tuples.push_back({"member", 0, t_param(q(-1, 100)), Vec{q(-1, 100)}, Vec{y1}});
    c.tuples.push_back({"member", 1, t_param(q(-1, 100)), Vec{q(-1, 100)}, Vec{y2}});
    return c;
  };
  // y2* = 0 lies in every normal cone, so its proximity clause holds.
  CHECK(verify_multiplier_rule(build(1, 0), p).accepted());
  CHECK(verify_multiplier_rule(build(q(1, 2), q(1, 2)), p).accepted());
  CHECK(has(verify_multiplier_rule(build(q(1, 2), q(1, 4)), p), "y-norm"));
}

TEST_CASE("search round trip on the four instances") {
  for (int i = 1; i <= 4; ++i) {
    const auto p = triple(i);
    const auto mp = as_multi(p);
    for (int k = 1; k <= 6; ++k) {
      const Rational eps = pow2(-k);
      CAPTURE(i);
      CAPTURE(k);
      const auto f = search_certificates(p, eps, DualCertificate::Kind::FuzzySeparation, ConeFlavor::Frechet);
      REQUIRE(f.has_value());
      CHECK(verify_fuzzy_separation(*f, p.pair(), p.ref()).accepted());
      std::vector<Vec> cov;
      for (const auto& t : f->tuples) cov.push_back(t.covector);
      const auto [sum, total] = norms(cov);
      CHECK(sum < eps);
      CHECK(total == 1);

      const auto m = search_certificates(p, eps, DualCertificate::Kind::MultiplierRule, ConeFlavor::Frechet);
      const auto s = search_certificates(p, eps, DualCertificate::Kind::Singular, ConeFlavor::Frechet);
      CHECK((m.has_value() || s.has_value()));
      // Ω = ℝ: the condition holds, so no singular tuple may verify.
      CHECK_FALSE(s.has_value());
      REQUIRE(m.has_value());
      CHECK(verify_multiplier_rule(*m, mp).accepted());
      CHECK(m->M == 1);
    }
  }
}

TEST_CASE("F1 separation has the expected structure") {
  const auto p = triple(1);
  const auto c = search_certificates(p, q(1, 2), DualCertificate::Kind::FuzzySeparation, ConeFlavor::Frechet);
  REQUIRE(c.has_value());
  // gph F1 = ℝ × [0, inf) and A = (-inf, t]: both normals are vertical.
  CHECK(c->tuples[0].covector == Vec{0, q(-1, 2)});
  CHECK(c->tuples[1].covector == Vec{0, q(1, 2)});
}

TEST_CASE("F4 multiplier found by search matches the slope") {
  const auto p = triple(4);
  const auto c = search_certificates(p, q(1, 4), DualCertificate::Kind::MultiplierRule, ConeFlavor::Frechet);
  REQUIRE(c.has_value());
  const auto& g = c->tuples[0];
  // x1* = φ'(x1)·y* on the smooth part, with y* = 1
  CHECK(c->y_stars[0] == Vec{1});
  const Rational x1 = g.point[0];
  const Rational slope = x1.sign() >= 0 ? -2 * x1 : Rational(1);
  CHECK(g.covector == Vec{slope});
}

TEST_CASE("nothing to separate for a full-range affine map") {
  const auto p = TripleProblem::make(identity_graph(), SetExpr::space(1),
                                     SetFamily::finite(1, {SetExpr::space(1)}), Vec{0}, Vec{0});
  for (int k = 1; k <= 4; ++k) {
    CHECK_FALSE(search_certificates(p, pow2(-k), DualCertificate::Kind::FuzzySeparation, ConeFlavor::Frechet));
    CHECK_FALSE(search_certificates(p, pow2(-k), DualCertificate::Kind::MultiplierRule, ConeFlavor::Frechet));
  }
}

TEST_CASE("qualification condition") {
  SUBCASE("interior point") {
    const auto r = check_qc(as_multi(triple(4)), ConeFlavor::Frechet, {q(1, 2), q(1, 4)});
    CHECK(r.status == QCReport::Status::HoldsWithEps);
    CHECK(r.sufficient == QCReport::Sufficient::InteriorPoint);
    CHECK(r.eps == q(1, 2));
  }
  SUBCASE("Aubin property of y = x on [0, inf)") {
    const auto p = MultiProblem::make({identity_graph()}, {inst::halflines()}, nonneg(), Vec{0}, {Vec{0}});
    for (auto fl : {ConeFlavor::Frechet, ConeFlavor::Clarke}) {
      const auto r = check_qc(p, fl, {q(1, 2), q(1, 4)});
      CHECK(r.status == QCReport::Status::HoldsWithEps);
      CHECK(r.sufficient == QCReport::Sufficient::AubinProperty);
      CHECK(r.eps == q(1, 3));
      // no singular tuple below that level
      CHECK_FALSE(search_singular(p, r.eps, fl));
    }
  }
  SUBCASE("point graph over a point") {
    const auto F = MappingExpr::polyhedral_graph(1, 1, SetExpr::singleton(Vec{0, 0}));
    const auto p = MultiProblem::make({F}, {inst::halflines()}, SetExpr::singleton(Vec{0}), Vec{0}, {Vec{0}});
    const auto r = check_qc(p, ConeFlavor::Frechet, {q(1, 2), q(1, 4), q(1, 8)});
    REQUIRE(r.status == QCReport::Status::ViolatedBy);
    REQUIRE(r.violation.has_value());
    CHECK(verify_singular(*r.violation, p).accepted());
    const Vec x1 = slice(r.violation->tuples[0].covector, 0, 1);
    const Vec x2 = r.violation->tuples[1].covector;
    CHECK(x1[0] + x2[0] == 0);
    CHECK(x1[0].abs() + x2[0].abs() == 1);
    CHECK(r.violation->tuples[0].covector[1] == 0);
  }
}

TEST_CASE("singular certificate clauses") {
  const auto F = MappingExpr::polyhedral_graph(1, 1, SetExpr::singleton(Vec{0, 0}));
  const auto p = MultiProblem::make({F}, {inst::halflines()}, SetExpr::singleton(Vec{0}), Vec{0}, {Vec{0}});
  DualCertificate c;
  c.kind = DualCertificate::Kind::Singular;
  c.eps = q(1, 8);
  c.tuples.push_back({"graph", 0, std::nullopt, Vec{0, 0}, Vec{q(1, 2), 0}});
  c.tuples.push_back({"omega", 0, std::nullopt, Vec{0}, Vec{q(-1, 2)}});
  CHECK(verify_singular(c, p).accepted());
  c.tuples[0].covector = Vec{q(1, 2), q(1, 8)};
  CHECK(verify_singular(c, p).failures == std::vector<std::string>{"y-small[0]"});
}

TEST_CASE("Aubin estimates") {
  SUBCASE("F4, delta = 1/4") {
    const auto r = aubin_estimate(inst::F(4), Vec{0}, Vec{0}, q(1, 4));
    REQUIRE(r.tau_upper.has_value());
    CHECK(*r.tau_upper == 1);
    CHECK(r.tau_lower <= *r.tau_upper);
    CHECK(r.audit.size() >= 100);
    CHECK(r.audit_ok());
    // independent: normal λ(s, -1) at slope s needs |s| ≤ τ
    for (const auto& a : r.audit) CHECK(a.normal[0].abs() <= a.normal[1].abs());
  }
  SUBCASE("F1 is constant") {
    const auto r = aubin_estimate(inst::F(1), Vec{0}, Vec{0}, q(1, 2));
    CHECK(*r.tau_upper == 0);
    CHECK(r.tau_lower == 0);
    CHECK(r.audit_ok());
    for (const auto& a : r.audit) CHECK(a.normal[0] == 0);
  }
  SUBCASE("[x, inf) with delta = 1") {
    const auto r = aubin_estimate(MappingExpr::epigraphical(PQFunction::affine(1, 0)), Vec{0}, Vec{0}, q(1));
    CHECK(*r.tau_upper == 1);
    CHECK(r.tau_lower == 1);
    CHECK(r.audit_ok());
  }
  SUBCASE("affine graph") {
    const auto G = MappingExpr::polyhedral_graph(
        1, 1, SetExpr::polyhedron(HPolyhedron(2, {{Vec{3, -2}, Rel::Eq, 0}})));  // y = 3x/2
    const auto r = aubin_estimate(G, Vec{0}, Vec{0}, q(1, 2));
    CHECK(*r.tau_upper == q(3, 2));
    CHECK(r.audit_ok());
  }
  SUBCASE("half-plane graph is not estimated") {
    const auto G = MappingExpr::polyhedral_graph(
        1, 1, SetExpr::polyhedron(HPolyhedron(2, {{Vec{1, -1}, Rel::Le, 0}})));
    const auto r = aubin_estimate(G, Vec{0}, Vec{0}, q(1, 2));
    CHECK_FALSE(r.tau_upper.has_value());
    CHECK_FALSE(r.note.empty());
  }
  CHECK_THROWS_AS(aubin_estimate(inst::F(4), Vec{0}, Vec{0}, q(0)), MalformedInput);
}

TEST_CASE("adversarial singular search finds nothing when the condition holds") {
  const auto r = adversarial_singular_search(as_multi(triple(4)), {q(1, 2), q(1, 4), q(1, 8)}, ConeFlavor::Frechet, 10000);
  CHECK(r.tuples_tried > 0);
  CHECK_FALSE(r.found.has_value());
}
