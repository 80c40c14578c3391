#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "vex/core/distance.hpp"
#include "vex/core/errors.hpp"
#include "vex/core/lp.hpp"
#include "vex/core/set_ops.hpp"
#include "vex/families/family.hpp"

using namespace vex;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

SetExpr halfline_le(const Rational& t) {
  return SetExpr::polyhedron(HPolyhedron(1, {{Vec{1}, Rel::Le, t}}));
}

// {(-inf, t] : t in R}
SetFamily halflines() { return SetFamily::param_interval(Interval1D::all(), halfline_le(0), Vec{1}); }

}  // namespace

TEST_CASE("parametric half-lines near the origin") {
  const auto fam = halflines();
  const auto ms = fam.members_within(Vec{0}, q(1, 20));
  REQUIRE_FALSE(ms.empty());
  for (const auto& m : ms) {
    CHECK(m.param.t > q(-1, 20));
    CHECK(distance(Vec{0}, m.set) < ExtRational(q(1, 20)));
  }
  CHECK(fam.realize(MemberParam::of_scalar(q(-3, 100))).contains(Vec{q(-3, 100)}));
  const auto qp = qualifying_parameters(fam, Vec{0}, q(1, 20));
  REQUIRE(qp);
  CHECK(qp->lo == ExtRational(q(-1, 20)));
  CHECK_FALSE(qp->lo_closed);
  CHECK(qp->hi.is_pos_inf());
  // The smallest qualifying parameters hug the threshold.
  CHECK(ms.front().param.t < q(-1, 20) + q(1, 10));
}

TEST_CASE("parametric family on a bounded domain") {
  const auto fam = SetFamily::param_interval(Interval1D::closed(q(1), q(2)), halfline_le(0), Vec{1});
  CHECK(fam.members_within(Vec{q(4)}, q(1, 2)).empty());
  CHECK_FALSE(fam.valid_param(MemberParam::of_scalar(q(3))));
  CHECK_THROWS_AS(fam.realize(MemberParam::of_scalar(q(3))), MalformedInput);
  const auto ms = fam.members_within(Vec{q(3)}, q(3, 2));
  REQUIRE_FALSE(ms.empty());
  for (const auto& m : ms) CHECK(m.param.t > q(3, 2));
}

TEST_CASE("singleton sequence 1/n") {
  const auto fam = SetFamily::singleton_seq(Vec{0}, Vec{1});
  const auto ms = fam.members_within(Vec{0}, q(1, 4), 3);
  REQUIRE(ms.size() == 3);
  CHECK(ms[0].param.index == 5);
  CHECK(ms[1].param.index == 6);
  CHECK(ms[0].set.point() == Vec{q(1, 5)});
  // exact at the finest schedule level, far past any fixed scan
  const auto fine = fam.members_within(Vec{0}, pow2(-12) * pow2(-12), 1);
  REQUIRE(fine.size() == 1);
  CHECK(fine[0].param.index == (1L << 24) + 1);
  CHECK(fam.all_qualifying_contain(Vec{0}, q(1, 4), Vec{0}) == std::optional<bool>(false));
  // Only n = 1 lies within 1/4 of 1.
  CHECK(fam.all_qualifying_contain(Vec{1}, q(1, 4), Vec{1}) == std::optional<bool>(true));
  CHECK(fam.all_qualifying_contain(Vec{q(-5)}, q(1, 4), Vec{0}) == std::optional<bool>(true));
}

TEST_CASE("finite family") {
  const auto fam = SetFamily::finite(1, {SetExpr::singleton(Vec{0})});
  for (const auto& r : {q(1, 1000), q(1), q(50)}) CHECK(fam.members_within(Vec{0}, r).size() == 1);
  CHECK_THROWS_AS(SetFamily::finite(2, {SetExpr::singleton(Vec{0})}), MalformedInput);
}

TEST_CASE("product families") {
  const auto box01 = SetExpr::interval(Interval1D::closed(q(0), q(1)));
  const auto fin = product_family(box01, SetFamily::finite(1, {SetExpr::singleton(Vec{q(1, 2)})}));
  CHECK(fin.kind() == SetFamily::Kind::Finite);
  CHECK(fin.finite_members()[0].contains(Vec{q(1, 3), q(1, 2)}));
  const auto xi2 = product_family(SetExpr::space(1), halflines());
  CHECK(xi2.kind() == SetFamily::Kind::ProductWith);
  const auto ms = xi2.members_within(Vec{0, 0}, q(1, 20));
  REQUIRE_FALSE(ms.empty());
  for (const auto& m : ms) CHECK(distance(Vec{0, 0}, m.set) < ExtRational(q(1, 20)));
  const auto none = product_family(SetExpr::empty(1), halflines());
  CHECK(none.members_within(Vec{0, 0}, q(100)).empty());
}

TEST_CASE("xi-delta family for a cone translation") {
  const auto k = halfline_le(0);
  const auto l = LevelSetMapping::cone_translation(k, Vec{0});
  const auto fam = xi_delta_family(l, Vec{0}, q(1));
  CHECK(fam.valid_param(MemberParam::of_point(Vec{q(-1, 2)})));
  CHECK_FALSE(fam.valid_param(MemberParam::of_point(Vec{q(1, 2)})));
  CHECK_FALSE(fam.valid_param(MemberParam::of_point(Vec{q(-1)})));
  const auto ms = fam.members_within(Vec{0}, q(1, 8));
  REQUIRE_FALSE(ms.empty());
  for (const auto& m : ms) {
    CHECK(m.param.y[0] <= q(0));
    CHECK(m.set.contains(m.param.y));  // closed half-line (-inf, y]
  }
}

TEST_CASE("xi-delta family for strict Pareto and singleton maps") {
  const auto sp = xi_delta_family(LevelSetMapping::strict_pareto(2), Vec{0, 0}, q(1, 2));
  const auto ms = sp.members_within(Vec{0, 0}, q(1, 4));
  REQUIRE_FALSE(ms.empty());
  CHECK(ms.front().param.y == Vec{0, 0});
  CHECK(ms.front().set.contains(Vec{0, 0}));
  const auto single = xi_delta_family(LevelSetMapping::singleton_map(1), Vec{0}, q(1));
  // L-(0) = {0}, so only the index point itself parameterizes a member.
  const auto sm = single.members_within(Vec{0}, q(1, 2));
  REQUIRE(sm.size() == 1);
  CHECK(sm[0].set.point() == Vec{0});
}

TEST_CASE("members_within results re-verify against exact distance") {
  std::mt19937 rng(11);
  for (int it = 0; it < 40; ++it) {
    const Rational c = oracle::random_rational(rng);
    const Rational r = Rational(1 + it % 5, 8);
    for (const auto& fam : {halflines(), SetFamily::singleton_seq(Vec{q(1, 4)}, Vec{q(-1, 2)})}) {
      for (const auto& m : fam.members_within(Vec{c}, r, 16)) {
        CHECK(distance(Vec{c}, m.set) < ExtRational(r));
      }
    }
  }
}

TEST_CASE("product emptiness factorizes") {
  std::mt19937 rng(5);
  auto rand_interval = [&]() {
    Rational a = oracle::random_rational(rng), b = oracle::random_rational(rng);
    if (b < a) std::swap(a, b);
    return HPolyhedron(1, {{Vec{1}, Rel::Le, b}, {Vec{-1}, Rel::Le, -a}});
  };
  for (int it = 0; it < 100; ++it) {
    const auto om = rand_interval(), a = rand_interval(), b = rand_interval(), c = rand_interval();
    const auto lhs = product_family(SetExpr::polyhedron(om), SetFamily::finite(1, {SetExpr::polyhedron(a)}));
    const auto rhs = product_family(SetExpr::polyhedron(b), SetFamily::finite(1, {SetExpr::polyhedron(c)}));
    const bool meet = decide_intersection({lhs.finite_members()[0], rhs.finite_members()[0]}).nonempty();
    const bool factored = lp_feasible(intersect(om, b)).feasible && lp_feasible(intersect(a, c)).feasible;
    CHECK(meet == factored);
  }
}

TEST_CASE("all_qualifying_contain for half-lines") {
  const auto fam = halflines();
  // Members within 1/10 of 0 are (-inf, t] with t > -1/10; all contain -1/10.
  CHECK(fam.all_qualifying_contain(Vec{0}, q(1, 10), Vec{q(-1, 10)}) == std::optional<bool>(true));
  CHECK(fam.all_qualifying_contain(Vec{0}, q(1, 10), Vec{q(-1, 20)}) == std::optional<bool>(false));
}
