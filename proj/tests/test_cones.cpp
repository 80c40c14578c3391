#include <random>

#include "doctest.h"
#include "agreement.hpp"
#include "oracles.hpp"
#include "vex/cones/normal.hpp"

using namespace vex;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

PQFunction f4() { return PQFunction({0}, {Quadratic{0, 1, 0}, Quadratic{-1, 0, 0}}); }
PQFunction absf() { return PQFunction({0}, {Quadratic{0, -1, 0}, Quadratic{0, 1, 0}}); }

}  // namespace

TEST_CASE("polar of simple cones") {
  const auto orth = FGCone::generated(2, {Vec{1, 0}, Vec{0, 1}});
  CHECK(cone_equal(polar(orth), FGCone::generated(2, {Vec{-1, 0}, Vec{0, -1}})));
  CHECK(cone_equal(polar(FGCone::zero(3)), FGCone::whole(3)));
  CHECK(polar(FGCone::whole(2)).is_zero());
  // {(u, v) : v >= |u|} = cone{(1, 1), (-1, 1)}.
  const auto vcone = FGCone::generated(2, {Vec{1, 1}, Vec{-1, 1}});
  const auto p = polar(vcone);
  CHECK(cone_equal(p, FGCone::generated(2, {Vec{1, -1}, Vec{-1, -1}})));
  // Support-inequality check on a direction grid.
  for (int a = -4; a <= 4; ++a) {
    for (int b = -4; b <= 4; ++b) {
      const Vec y{a, b};
      const bool oracle = a + b <= 0 && -a + b <= 0;
      CHECK(cone_member(p, y) == oracle);
    }
  }
}

TEST_CASE("cone membership") {
  const auto orth = FGCone::generated(2, {Vec{1, 0}, Vec{0, 1}});
  CHECK(cone_member(orth, Vec{1, 1}));
  CHECK_FALSE(cone_member(orth, Vec{-1, 0}));
  const auto n = normal_cone(SetExpr::epigraph(f4()), Vec{q(1, 200), q(-1, 40000)}, ConeFlavor::Frechet);
  REQUIRE(n.in_set);
  CHECK(cone_member(n.cone, scale(Vec{q(-1, 100), -1}, q(100, 201))));
  CHECK_FALSE(cone_member(n.cone, Vec{q(1, 100), -1}));
}

TEST_CASE("polar is an involution on random cones") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> c(-3, 3), count(0, 4), dimd(2, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = static_cast<std::size_t>(dimd(rng));
    Matrix gens, lin;
    const int ng = count(rng);
    for (int i = 0; i < ng; ++i) {
      Vec g;
      for (std::size_t k = 0; k < d; ++k) g.push_back(c(rng));
      gens.push_back(g);
    }
    if (trial % 5 == 0) {
      Vec l;
      for (std::size_t k = 0; k < d; ++k) l.push_back(c(rng));
      lin.push_back(l);
    }
    const auto cone = FGCone::generated(d, gens, lin);
    const auto pp = polar(polar(cone));
    CHECK(cone_equal(cone, pp));
    // Every polar generator pairs nonpositively with every cone generator.
    const auto p = polar(cone);
    for (const auto& y : p.generators) {
      for (const auto& g : cone.generators) CHECK(dot(y, g).sign() <= 0);
    }
  }
}

TEST_CASE("normal cone examples") {
  auto n = normal_cone(SetExpr::space(1), Vec{0}, ConeFlavor::Frechet);
  REQUIRE(n.in_set);
  CHECK(n.cone.is_zero());

  const SetExpr a = SetExpr::polyhedron(HPolyhedron(1, {{Vec{1}, Rel::Le, q(-1, 100)}}));
  n = normal_cone(a, Vec{q(-1, 100)}, ConeFlavor::Frechet);
  CHECK(cone_equal(n.cone, FGCone::ray(Vec{1})));

  n = normal_cone(SetExpr::epigraph(f4()), Vec{q(1, 200), q(-1, 40000)}, ConeFlavor::Frechet);
  CHECK(cone_equal(n.cone, FGCone::ray(Vec{q(-1, 100), -1})));

  CHECK_FALSE(normal_cone(a, Vec{0}, ConeFlavor::Clarke).in_set);
  CHECK_FALSE(normal_cone(SetExpr::epigraph(f4()), Vec{1, -2}, ConeFlavor::Clarke).in_set);
  CHECK_THROWS_AS(normal_cone(SetExpr::epigraph(f4()), Vec{0, 0}, ConeFlavor::Convex), UnsupportedClass);
}

TEST_CASE("Frechet normals at kinks") {
  // Concave kink of F4 at 0: Fréchet cone trivial, Clarke cone spanned by
  // (1, -1) and (0, -1).
  const SetExpr g = SetExpr::epigraph(f4());
  CHECK(normal_cone(g, Vec{0, 0}, ConeFlavor::Frechet).cone.is_zero());
  CHECK(cone_equal(normal_cone(g, Vec{0, 0}, ConeFlavor::Clarke).cone,
                   FGCone::generated(2, {Vec{1, -1}, Vec{0, -1}})));
  // Convex kink of |x|: all flavors give cone{(1, -1), (-1, -1)}.
  const SetExpr e = SetExpr::epigraph(absf());
  const FGCone expect = FGCone::generated(2, {Vec{1, -1}, Vec{-1, -1}});
  for (auto fl : {ConeFlavor::Frechet, ConeFlavor::Clarke, ConeFlavor::Convex}) {
    CHECK(cone_equal(normal_cone(e, Vec{0, 0}, fl).cone, expect));
  }
}

TEST_CASE("Clarke tangent cones") {
  const auto t = clarke_tangent(SetExpr::epigraph(absf()), Vec{0, 0});
  CHECK(cone_equal(t, FGCone::generated(2, {Vec{1, 1}, Vec{-1, 1}})));
  const auto t4 = clarke_tangent(SetExpr::epigraph(f4()), Vec{0, 0});
  // {v >= u, v >= 0}
  CHECK(cone_equal(t4, FGCone::generated(2, {Vec{1, 1}, Vec{-1, 0}})));
  const SetExpr half = SetExpr::polyhedron(HPolyhedron(2, {{Vec{0, -1}, Rel::Le, 0}}));
  CHECK(cone_equal(clarke_tangent(half, Vec{3, 0}), FGCone::generated(2, {Vec{0, 1}}, {Vec{1, 0}})));
}

TEST_CASE("sequence-definition oracle for Clarke tangents") {
  for (const auto& f : {absf(), f4()}) {
    const auto t = clarke_tangent(SetExpr::epigraph(f), Vec{0, 0});
    for (int a = -3; a <= 3; ++a) {
      for (int b = -3; b <= 3; ++b) {
        const Vec z{a, b};
        CHECK(cone_member(t, z) == oracle::clarke_tangent_sampled(f, 0, z));
      }
    }
  }
}

TEST_CASE("coderivative examples") {
  const auto F4 = MappingExpr::epigraphical(f4());
  auto d = coderivative(F4, Vec{q(1, 200)}, Vec{q(-1, 40000)}, Vec{1}, ConeFlavor::Frechet);
  REQUIRE(d.kind == CoderivativeResult::Kind::Point);
  CHECK(d.a == Vec{q(-1, 100)});

  const auto F1 = MappingExpr::epigraphical(PQFunction::constant(0));
  d = coderivative(F1, Vec{0}, Vec{0}, Vec{1}, ConeFlavor::Frechet);
  REQUIRE(d.kind == CoderivativeResult::Kind::Point);
  CHECK(d.a == Vec{0});
  d = coderivative(F1, Vec{0}, Vec{0}, Vec{-1}, ConeFlavor::Frechet);
  CHECK(d.kind == CoderivativeResult::Kind::Empty);
  CHECK_THROWS_AS(coderivative(F1, Vec{0}, Vec{-1}, Vec{1}, ConeFlavor::Frechet), NotInGraph);

  // Clarke coderivative of F4 at the kink with y* = 1: {x* : (x*, -1) in
  // cone{(1,-1),(0,-1)}} = [0, 1].
  d = coderivative(F4, Vec{0}, Vec{0}, Vec{1}, ConeFlavor::Clarke);
  REQUIRE(d.kind == CoderivativeResult::Kind::Segment);
  CHECK(d.a == Vec{0});
  CHECK(d.b == Vec{1});
}

TEST_CASE("Frechet cone is inside the Clarke cone at random points") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const auto f = oracle::random_pq(rng);
    const Rational x = trial % 3 == 0 && !f.breakpoints().empty() ? f.breakpoints()[0] : oracle::random_rational(rng);
    const Vec p{x, f(x)};
    const auto nf = normal_cone(SetExpr::epigraph(f), p, ConeFlavor::Frechet);
    const auto nc = normal_cone(SetExpr::epigraph(f), p, ConeFlavor::Clarke);
    for (const auto& g : nf.cone.generators) CHECK(cone_member(nc.cone, g));
  }
}

TEST_CASE("flavors agree on convex sets") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    HPolyhedron p(2);
    for (int k = 0; k < 3; ++k) p.add({Vec{c(rng), c(rng)}, Rel::Le, c(rng)});
    const SetExpr s = SetExpr::polyhedron(p);
    const Vec x{c(rng), c(rng)};
    if (!s.contains(x)) continue;
    const auto a = normal_cone(s, x, ConeFlavor::Frechet);
    const auto b = normal_cone(s, x, ConeFlavor::Clarke);
    const auto cc = normal_cone(s, x, ConeFlavor::Convex);
    CHECK(cone_equal(a.cone, b.cone));
    CHECK(cone_equal(a.cone, cc.cone));
    // Scaling the set and the point leaves the cone unchanged.
    const Rational l = q(c(rng) + 4, 3);
    CHECK(cone_equal(normal_cone(s.scale(l), scale(x, l), ConeFlavor::Frechet).cone, a.cone));
  }
}

TEST_CASE("union Frechet cone") {
  // {y >= 0} ∪ {x >= 0}: the contingent cone at the origin covers three
  // quadrants, so its polar is {0}.
  const SetExpr a = SetExpr::polyhedron(HPolyhedron(2, {{Vec{0, -1}, Rel::Le, 0}}));
  const SetExpr b = SetExpr::polyhedron(HPolyhedron(2, {{Vec{-1, 0}, Rel::Le, 0}}));
  const SetExpr u = SetExpr::union_of(2, {a, b});
  CHECK(normal_cone(u, Vec{0, 0}, ConeFlavor::Frechet).cone.is_zero());
  CHECK_THROWS_AS(normal_cone(u, Vec{0, 0}, ConeFlavor::Clarke), UnsupportedClass);
  // Away from the corner only one member is active.
  CHECK(cone_equal(normal_cone(u, Vec{-1, 0}, ConeFlavor::Frechet).cone, FGCone::ray(Vec{0, -1})));
}

TEST_CASE("Frechet cones agree with the limsup sampler") {
  const auto s = agreement::run(99, 40);
  CHECK(s.kinks >= 8);
  CHECK(s.violators_checked > 0);
  for (const auto& e : s.errors) FAIL_CHECK(e);
}
