#include <random>

#include "doctest.h"
#include "instances.hpp"
#include "vex/core/errors.hpp"
#include "vex/core/set_ops.hpp"
#include "vex/prefs/properties.hpp"

using namespace vex;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

LevelSetMapping down_cone() { return LevelSetMapping::cone_translation(inst::halfline_le(0), Vec{0}); }

bool same_set(const SetExpr& a, const SetExpr& b) { return included(a, b).included() && included(b, a).included(); }

void check_failures(const LevelSetMapping& l, const Vec& y_bar, const OPropertyReport& r) {
  for (int i = 1; i <= 6; ++i) {
    if (r.o(i).fails()) {
      CAPTURE(i);
      CHECK(verify_o_failure(l, y_bar, i, r.o(i)));
    }
  }
}

}  // namespace

TEST_CASE("L° and L⁻ on the three variants") {
  const auto s = LevelSetMapping::singleton_map(1);
  CHECK(decide_intersection({l_circ(s, Vec{0})}).empty());
  CHECK(same_set(l_minus(s, Vec{0}), SetExpr::singleton(Vec{0})));

  const auto c = down_cone();
  CHECK(same_set(l_circ(c, Vec{0}), SetExpr::interval(Interval1D::open(ExtRational::neg_inf(), 0))));
  CHECK(same_set(l_minus(c, Vec{0}), inst::halfline_le(0)));

  const auto p = LevelSetMapping::strict_pareto(2);
  CHECK(same_set(l_circ(p, Vec{1, 1}), p.at(Vec{1, 1})));

  // L°(y) ∪ {y} = L⁻(y) and L°(y) = L(y) \ {y} on sampled points
  for (const auto& l : {c, p, LevelSetMapping::cone_translation(SetExpr::interval(Interval1D::closed(-1, 1)), Vec{0})}) {
    for (long k = -2; k <= 2; ++k) {
      const Vec y(l.dim(), q(k, 3));
      const SetExpr circ = l_circ(l, y);
      CHECK(same_set(SetExpr::union_of(l.dim(), {circ, SetExpr::singleton(y)}), l_minus(l, y)));
      CHECK_FALSE(circ.contains(y));
      CHECK(included(circ, l.at(y)).included());
    }
  }
}

TEST_CASE("properties of the singleton map") {
  const auto l = LevelSetMapping::singleton_map(1);
  const auto r = check_o_properties(l, Vec{0});
  CHECK(r.o(1).fails());
  CHECK(r.o(2).fails());
  CHECK(r.o(3).fails());
  CHECK(r.o(4).holds());
  CHECK(r.o(5).holds());
  CHECK(r.o(6).holds());
  check_failures(l, Vec{0}, r);
}

TEST_CASE("properties of strict Pareto with a kill point") {
  const auto l = LevelSetMapping::strict_pareto(2, Vec{0, 0});
  const auto r = check_o_properties(l, Vec{0, 0});
  CHECK(r.o(1).fails());
  CHECK(r.o(2).fails());
  CHECK(r.o(4).holds());
  CHECK(r.o(5).holds());
  check_failures(l, Vec{0, 0}, r);

  // Without the kill point everything except O4's local satiation is fine.
  const auto plain = LevelSetMapping::strict_pareto(2);
  const auto r2 = check_o_properties(plain, Vec{0, 0});
  CHECK(r2.o(1).holds());
  CHECK(r2.o(2).holds());
  CHECK(r2.o(3).holds());
  CHECK(r2.o(4).holds());
  CHECK(r2.o(5).holds());
  CHECK(r2.o(6).holds());
}

TEST_CASE("properties of the down cone translation") {
  const auto l = down_cone();
  const auto r = check_o_properties(l, Vec{0});
  CHECK(r.o(1).holds());
  CHECK(r.o(2).verdict == OVerdict::Holds);
  CHECK(r.o(3).fails());
  CHECK(r.o(4).holds());
  CHECK(r.o(6).holds());
  check_failures(l, Vec{0}, r);
}

TEST_CASE("a bounded K breaks almost transitivity") {
  const auto l = LevelSetMapping::cone_translation(SetExpr::interval(Interval1D::closed(-1, 1)), Vec{0});
  const auto r = check_o_properties(l, Vec{0});
  REQUIRE(r.o(6).fails());
  CHECK(verify_o_failure(l, Vec{0}, 6, r.o(6)));
  REQUIRE(r.o(5).fails());
  CHECK(verify_o_failure(l, Vec{0}, 5, r.o(5)));
  // independent: y and v sit within 2 of each other but v leaves [-1, 1]
  CHECK(((*r.o(6).v)[0] - (*r.o(6).y)[0]).abs() <= 1);
  CHECK((*r.o(6).v)[0].abs() > 1);
}

TEST_CASE("implication harness on a random corpus") {
  std::mt19937 rng(20240611);
  auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  std::vector<HarnessInstance> corpus;
  corpus.push_back({LevelSetMapping::singleton_map(1), Vec{0}, "singleton"});
  corpus.push_back({LevelSetMapping::strict_pareto(2, Vec{0, 0}), Vec{0, 0}, "pareto-kill"});
  corpus.push_back({LevelSetMapping::strict_pareto(2), Vec{0, 0}, "pareto"});
  corpus.push_back({down_cone(), Vec{0}, "down-cone"});
  // 1-D intervals containing 0 with random ends
  for (int i = 0; i < 24; ++i) {
    Interval1D k;
    const long a = pick(0, 3), b = pick(0, 3);
    if (a > 0) k.lo = ExtRational(q(-a, pick(1, 4)));
    if (b > 0) k.hi = ExtRational(q(b, pick(1, 4)));
    k.lo_closed = a > 0 && pick(0, 1);
    k.hi_closed = b > 0 && pick(0, 1);
    if (a == 0 && pick(0, 2) == 0) {
      k.lo = 0;
      k.lo_closed = true;
    }
    corpus.push_back({LevelSetMapping::cone_translation(SetExpr::interval(k), Vec{0}), Vec{0}, "interval-" + k.str()});
  }
  // 2-D polyhedra containing the origin
  for (int i = 0; i < 20; ++i) {
    HPolyhedron p(2);
    const long rows = pick(1, 3);
    for (long r = 0; r < rows; ++r) {
      const Vec a{q(pick(-3, 3)), q(pick(-3, 3))};
      if (is_zero(a)) continue;
      const long b = pick(0, 2);
      p.add({a, b > 0 && pick(0, 1) ? Rel::Lt : Rel::Le, q(b)});
    }
    const Vec y_bar{q(pick(-2, 2), 4), q(pick(-2, 2), 4)};
    corpus.push_back({LevelSetMapping::cone_translation(SetExpr::polyhedron(p).translate(y_bar), y_bar), y_bar,
                      "polyhedron-" + std::to_string(i)});
  }
  // tables: the identity shape with one special entry at ȳ
  for (int i = 0; i < 4; ++i) {
    const SetExpr special = i % 2 ? SetExpr::singleton(Vec{0}) : SetExpr::interval(Interval1D::open(-1, 0));
    corpus.push_back({LevelSetMapping::table_on_grid(q(1, 4), inst::halfline_le(0).translate(Vec{q(-i, 8)}),
                                                     {{Vec{0}, special}}),
                      Vec{0}, "table-" + std::to_string(i)});
  }
  REQUIRE(corpus.size() >= 50);
  const auto rep = implication_harness(corpus);
  CHECK(rep.instances == corpus.size());
  CHECK(rep.checks >= 3 * corpus.size());
  for (const auto& v : rep.violations) FAIL_CHECK(v);
  CHECK(rep.ok());
}

TEST_CASE("bridge from extremal points to extremal triples") {
  const auto sched = EpsSchedule::dyadic(6);
  SUBCASE("F1 is confirmed") {
    const auto r = bridge_extremal_point(inst::F(1), SetExpr::space(1), down_cone(), Vec{0}, Vec{0}, q(1), sched);
    CHECK(r.status == BridgeReport::Status::Confirmed);
  }
  SUBCASE("F4 is vacuous") {
    const auto r = bridge_extremal_point(inst::F(4), SetExpr::space(1), down_cone(), Vec{0}, Vec{0}, q(1), sched);
    CHECK(r.status == BridgeReport::Status::Vacuous);
  }
  SUBCASE("singleton map does not meet the hypotheses") {
    const auto r = bridge_extremal_point(inst::F(1), SetExpr::space(1), LevelSetMapping::singleton_map(1), Vec{0},
                                         Vec{0}, q(1), sched);
    CHECK(r.status == BridgeReport::Status::HypothesisUnmet);
  }
  SUBCASE("twenty kinked instances") {
    std::mt19937 rng(7);
    auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    int confirmed = 0;
    for (int i = 0; i < 20; ++i) {
      // Even instances: left slope <= 0 and right slope >= 0, a local minimum.
      Rational left = q(pick(0, 4), pick(1, 3)), right = q(pick(0, 4), pick(1, 3));
      if (i % 2 == 0) {
        left = -left;
      } else if (pick(0, 1)) {
        left = -left;
        right = -right - 1;
      } else {
        left += 1;
      }
      const PQFunction f({0}, {Quadratic{0, left, 0}, Quadratic{0, right, 0}});
      const auto r = bridge_extremal_point(MappingExpr::epigraphical(f), SetExpr::space(1), down_cone(), Vec{0},
                                           Vec{0}, q(1), sched);
      CAPTURE(i);
      CHECK(r.status != BridgeReport::Status::Violation);
      if (i % 2 == 0) {
        CHECK(r.status == BridgeReport::Status::Confirmed);
        ++confirmed;
      } else {
        CHECK(r.status == BridgeReport::Status::Vacuous);
      }
    }
    CHECK(confirmed == 10);
  }
}

TEST_CASE("admissible sets") {
  const auto id = MappingExpr::epigraphical(PQFunction::affine(1, 0));
  CHECK(same_set(admissible_set({id}, {inst::halfline_le(0)}, SetExpr::space(1)), inst::halfline_le(0)));
  CHECK(decide_intersection({admissible_set({id}, {SetExpr::empty(1)}, SetExpr::space(1))}).empty());
  CHECK(same_set(admissible_set({inst::F(4)}, {SetExpr::singleton(Vec{0})}, SetExpr::space(1)), SetExpr::space(1)));

  // brute-force grid oracle for x² with K = (-inf, 1/4): |x| < 1/2
  const auto sq = MappingExpr::epigraphical(PQFunction({}, {Quadratic{1, 0, 0}}));
  const auto k = SetExpr::interval(Interval1D::open(ExtRational::neg_inf(), q(1, 4)));
  const auto s = admissible_set({sq}, {k}, SetExpr::space(1));
  for (long j = -40; j <= 40; ++j) {
    const Rational x = q(j, 40);
    CHECK(s.contains(Vec{x}) == (x * x < q(1, 4)));
  }
  CHECK_THROWS_AS(admissible_set({sq}, {inst::halfline_le(2)}, SetExpr::space(1)), NonRationalValue);

  // polyhedral graph y = x with K = [1, 2] on Ω = [0, 3/2]
  const auto g = MappingExpr::polyhedral_graph(1, 1, SetExpr::polyhedron(HPolyhedron(2, {{Vec{1, -1}, Rel::Eq, 0}})));
  const auto s2 = admissible_set({g}, {SetExpr::interval(Interval1D::closed(1, 2))},
                                 SetExpr::interval(Interval1D::closed(0, q(3, 2))));
  CHECK(same_set(s2, SetExpr::interval(Interval1D::closed(1, q(3, 2)))));
}
