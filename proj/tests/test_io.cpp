#include <string>

#include "doctest.h"
#include "instances.hpp"
#include "vex/core/errors.hpp"
#include "vex/io/json.hpp"

using namespace vex;
using io::Json;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

std::string diag(const std::string& text) {
  try {
    io::problem_from(io::parse_text(text));
  } catch (const MalformedInput& e) {
    return e.what();
  }
  return "";
}

const char* kTriple = R"({
  "version": "1", "kind": "triple", "space": [1, 1],
  "omega": {"type": "space", "dim": 1},
  "mapping": {"type": "epigraphical", "function": {"breakpoints": ["0"], "pieces": [["0", "1", "0"], ["-1", "0", "0"]]}},
  "family": {"type": "param-interval", "domain": {"lo": "-inf", "hi": "inf"},
             "base": {"type": "polyhedron", "dim": 1, "rows": [{"a": ["1"], "rel": "<=", "b": "0"}]},
             "direction": ["1"]},
  "refpoint": {"x": ["0"], "y": ["0"]}
})";

}  // namespace

TEST_CASE("rationals") {
  CHECK(io::to_json(q(-3, 6)) == "-1/2");
  CHECK(io::rational_from(Json("6/4")) == q(3, 2));
  CHECK(io::rational_from(Json(7)) == q(7));
  CHECK_THROWS_AS(io::rational_from(Json(0.5)), MalformedInput);
  CHECK_THROWS_AS(io::rational_from(Json("1/0")), MalformedInput);
  CHECK(io::ext_from(Json("inf")).is_pos_inf());
  CHECK(io::to_json(ExtRational::neg_inf()) == "-inf");
  CHECK(io::parse_vec_list("1/2, -3") == Vec{q(1, 2), q(-3)});
  CHECK_THROWS_AS(io::parse_vec_list("1,,2"), MalformedInput);
}

TEST_CASE("sets round-trip") {
  const SetExpr box = SetExpr::polyhedron(HPolyhedron::box(Vec{0, 1}, q(1, 2), true));
  const std::vector<SetExpr> sets{
      box,
      SetExpr::singleton(Vec{q(1, 3)}),
      SetExpr::interval(Interval1D::open(ExtRational::neg_inf(), q(1, 4))),
      SetExpr::epigraph(inst::phi(4)),
      SetExpr::union_of(1, {SetExpr::singleton(Vec{0}), SetExpr::interval(Interval1D::closed(1, 2))}),
      SetExpr::product({SetExpr::singleton(Vec{0}), inst::halfline_le(q(-1, 2))}),
      SetExpr::embedded(inst::halfline_le(0), {1}, 2),
  };
  for (const auto& s : sets) {
    const Json j = io::to_json(s);
    const SetExpr back = io::set_from(io::parse_text(j.dump()));
    CHECK(io::to_json(back) == j);
    // same membership on a few points
    for (long k = -4; k <= 4; ++k) {
      const Vec p(s.dim(), q(k, 4));
      CHECK(back.contains(p) == s.contains(p));
    }
  }
}

TEST_CASE("polyhedron field order is fixed") {
  const Json j = io::to_json(SetExpr::polyhedron(HPolyhedron(1, {{Vec{2}, Rel::Lt, q(1, 3)}})));
  CHECK(j.dump() == R"({"type":"polyhedron","dim":1,"rows":[{"a":["2"],"rel":"<","b":"1/3"}]})");
}

TEST_CASE("families, mappings and level sets round-trip") {
  const std::vector<SetFamily> fams{
      inst::halflines(),
      SetFamily::finite(1, {SetExpr::singleton(Vec{0})}),
      SetFamily::singleton_seq(Vec{0}, Vec{1}),
      xi_delta_family(LevelSetMapping::cone_translation(inst::halfline_le(0), Vec{0}), Vec{0}, q(1, 2)),
      product_family(SetExpr::space(1), inst::halflines()),
  };
  for (const auto& f : fams) {
    const Json j = io::to_json(f);
    CHECK(io::to_json(io::family_from(j)) == j);
  }
  const std::vector<MappingExpr> maps{
      inst::F(2),
      MappingExpr::polyhedral_graph(1, 1, SetExpr::polyhedron(HPolyhedron(2, {{Vec{1, -1}, Rel::Eq, 0}}))),
      MappingExpr::product({inst::F(1), inst::F(4)}),
  };
  for (const auto& m : maps) {
    const Json j = io::to_json(m);
    CHECK(io::to_json(io::mapping_from(j)) == j);
  }
  const std::vector<LevelSetMapping> ls{
      LevelSetMapping::singleton_map(1),
      LevelSetMapping::strict_pareto(2, Vec{0, 0}),
      LevelSetMapping::cone_translation(inst::halfline_le(0), Vec{0}),
      LevelSetMapping::table_on_grid(q(1, 4), inst::halfline_le(0), {{Vec{0}, SetExpr::singleton(Vec{0})}}),
  };
  for (const auto& l : ls) {
    const Json j = io::to_json(l);
    CHECK(io::to_json(io::levelset_from(j)) == j);
  }
}

TEST_CASE("certificates round-trip") {
  DualCertificate c;
  c.kind = DualCertificate::Kind::MultiplierRule;
  c.eps = q(1, 4);
  c.M = 1;
  c.y_stars = {Vec{1}};
  c.tuples.push_back({"graph", 0, std::nullopt, Vec{q(1, 200), q(-1, 40000)}, Vec{q(-1, 100)}});
  c.tuples.push_back({"member", 0, MemberParam::of_scalar(q(-1, 100)), Vec{q(-1, 100)}, Vec{1}});
  const std::string text = io::dump(io::to_json(c));
  CHECK(io::dump(io::to_json(io::cert_from(io::parse_text(text)))) == text);
  CHECK(text.rfind("{\n  \"kind\": \"multiplier\",\n  \"eps\": \"1/4\"", 0) == 0);
}

TEST_CASE("problem files") {
  const auto pf = io::problem_from(io::parse_text(kTriple));
  CHECK(pf.kind == io::ProblemFile::Kind::Triple);
  CHECK(pf.space == std::vector<std::size_t>{1, 1});
  const auto t = pf.triple();
  CHECK(t.y_bar == Vec{0});
  const Json j = io::to_json(pf);
  CHECK(io::to_json(io::problem_from(j)) == j);
}

TEST_CASE("each input error has its own diagnostic") {
  CHECK(diag("{ not json").rfind("malformed JSON", 0) == 0);
  std::string no_family = kTriple;
  no_family.replace(no_family.find("\"family\""), 8, "\"familia\"");
  CHECK(diag(no_family).rfind("schema: missing field 'family'", 0) == 0);
  std::string bad_ref = kTriple;
  bad_ref.replace(bad_ref.find("\"y\": [\"0\"]"), 10, "\"y\": [\"-1\"]");
  CHECK(diag(bad_ref).rfind("infeasible refpoint", 0) == 0);
  std::string bad_space = kTriple;
  bad_space.replace(bad_space.find("[1, 1]"), 6, "[1, 2]");
  CHECK(diag(bad_space).rfind("schema:", 0) == 0);
  std::string floaty = kTriple;
  floaty.replace(floaty.find("\"-inf\""), 6, "-1.5");
  CHECK(diag(floaty).rfind("schema:", 0) == 0);
  CHECK_THROWS_WITH_AS(io::read_file("/nonexistent/p.json"), doctest::Contains("cannot read"), MalformedInput);
}
