#include "vex/io/json.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "vex/core/errors.hpp"

namespace vex::io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw MalformedInput("schema: " + what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) schema(std::string("expected an object holding '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) schema(std::string("missing field '") + name + "'");
  return *it;
}

const Json* optional_field(const Json& j, const char* name) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(name);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::string str_field(const Json& j, const char* name) {
  const Json& f = field(j, name);
  if (!f.is_string()) schema(std::string("field '") + name + "' must be a string");
  return f.get<std::string>();
}

std::size_t size_field(const Json& j, const char* name) {
  const Json& f = field(j, name);
  if (!f.is_number_unsigned() && !(f.is_number_integer() && f.get<long>() >= 0))
    schema(std::string("field '") + name + "' must be a non-negative integer");
  return f.get<std::size_t>();
}

bool bool_field(const Json& j, const char* name, bool dflt) {
  const Json* f = optional_field(j, name);
  if (!f) return dflt;
  if (!f->is_boolean()) schema(std::string("field '") + name + "' must be a boolean");
  return f->get<bool>();
}

const Json& array_field(const Json& j, const char* name) {
  const Json& f = field(j, name);
  if (!f.is_array()) schema(std::string("field '") + name + "' must be an array");
  return f;
}

template <class T, class F>
Json array_of(const std::vector<T>& xs, F&& f) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(f(x));
  return a;
}

Json vecs(const std::vector<Vec>& vs) {
  return array_of(vs, [](const Vec& v) { return to_json(v); });
}

std::vector<Vec> vecs_from(const Json& j) {
  if (!j.is_array()) schema("expected an array of vectors");
  std::vector<Vec> out;
  for (const auto& v : j) out.push_back(vec_from(v));
  return out;
}

}  // namespace

// ---- scalars and vectors ---------------------------------------------------

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const ExtRational& r) { return r.str(); }

Json to_json(const Vec& v) {
  return array_of(v, [](const Rational& r) { return to_json(r); });
}

Rational rational_from(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw MalformedInput("schema: rationals are written as \"p/q\" strings or integers, got " + j.dump());
}

ExtRational ext_from(const Json& j) {
  if (j.is_string()) return ExtRational::parse(j.get<std::string>());
  return rational_from(j);
}

Vec vec_from(const Json& j) {
  if (!j.is_array()) schema("expected a vector, got " + j.dump());
  Vec v;
  for (const auto& x : j) v.push_back(rational_from(x));
  return v;
}

Vec parse_vec_list(const std::string& text) {
  Vec v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw MalformedInput("empty vector entry in '" + text + "'");
    v.push_back(Rational::parse(item.substr(b, e - b + 1)));
  }
  if (v.empty()) throw MalformedInput("empty vector '" + text + "'");
  return v;
}

// ---- sets -----------------------------------------------------------------

Json to_json(const Interval1D& i) {
  Json j;
  j["lo"] = to_json(i.lo);
  j["lo_closed"] = i.lo_closed;
  j["hi"] = to_json(i.hi);
  j["hi_closed"] = i.hi_closed;
  return j;
}

Interval1D interval_from(const Json& j) {
  Interval1D i;
  if (optional_field(j, "lo")) i.lo = ext_from(field(j, "lo"));
  if (optional_field(j, "hi")) i.hi = ext_from(field(j, "hi"));
  i.lo_closed = bool_field(j, "lo_closed", false);
  i.hi_closed = bool_field(j, "hi_closed", false);
  if ((i.lo.is_neg_inf() || i.lo.is_pos_inf()) && i.lo_closed) schema("infinite interval ends are open");
  if ((i.hi.is_neg_inf() || i.hi.is_pos_inf()) && i.hi_closed) schema("infinite interval ends are open");
  return i;
}

Json to_json(const HPolyhedron& p) {
  Json j;
  j["dim"] = p.dim();
  j["rows"] = array_of(p.rows(), [](const LinearRow& r) {
    Json row;
    row["a"] = to_json(r.a);
    row["rel"] = rel_str(r.rel);
    row["b"] = to_json(r.b);
    return row;
  });
  return j;
}

HPolyhedron poly_from(const Json& j) {
  const std::size_t n = size_field(j, "dim");
  HPolyhedron p(n);
  if (const Json* rows = optional_field(j, "rows")) {
    if (!rows->is_array()) schema("field 'rows' must be an array");
    for (const auto& r : *rows) {
      Vec a = vec_from(field(r, "a"));
      if (a.size() != n) schema("row length differs from the polyhedron dimension");
      p.add({std::move(a), parse_rel(str_field(r, "rel")), rational_from(field(r, "b"))});
    }
  }
  return p;
}

Json to_json(const PQFunction& f) {
  Json j;
  j["breakpoints"] = to_json(f.breakpoints());
  j["pieces"] = array_of(f.pieces(), [](const Quadratic& q) { return to_json(Vec{q.a2, q.a1, q.a0}); });
  return j;
}

PQFunction pq_from(const Json& j) {
  Vec bs;
  if (const Json* b = optional_field(j, "breakpoints")) bs = vec_from(*b);
  std::vector<Quadratic> ps;
  for (const auto& p : array_field(j, "pieces")) {
    const Vec c = vec_from(p);
    if (c.size() != 3) schema("a piece lists [a2, a1, a0]");
    ps.push_back({c[0], c[1], c[2]});
  }
  return PQFunction(bs, ps);
}

Json to_json(const SetExpr& s) {
  Json j;
  switch (s.kind()) {
    case SetExpr::Kind::Polyhedron: {
      j["type"] = "polyhedron";
      const Json p = to_json(s.poly());
      j["dim"] = p["dim"];
      j["rows"] = p["rows"];
      break;
    }
    case SetExpr::Kind::Union:
      j["type"] = "union";
      j["dim"] = s.dim();
      j["members"] = array_of(s.members(), [](const SetExpr& m) { return to_json(m); });
      break;
    case SetExpr::Kind::Singleton:
      j["type"] = "singleton";
      j["point"] = to_json(s.point());
      break;
    case SetExpr::Kind::Interval: {
      j["type"] = "interval";
      const Interval1D& i = s.interval();
      j["lo"] = to_json(i.lo);
      j["lo_closed"] = i.lo_closed;
      j["hi"] = to_json(i.hi);
      j["hi_closed"] = i.hi_closed;
      break;
    }
    case SetExpr::Kind::Epigraph:
      j["type"] = "epigraph";
      j["function"] = to_json(s.function());
      break;
    case SetExpr::Kind::Product:
      j["type"] = "product";
      j["factors"] = array_of(s.members(), [](const SetExpr& m) { return to_json(m); });
      break;
    case SetExpr::Kind::Embedded:
      j["type"] = "embedded";
      j["ambient"] = s.dim();
      j["coords"] = s.coords();
      j["inner"] = to_json(s.inner());
      break;
  }
  return j;
}

SetExpr set_from(const Json& j) {
  const std::string t = str_field(j, "type");
  if (t == "polyhedron") return SetExpr::polyhedron(poly_from(j));
  if (t == "space") return SetExpr::space(size_field(j, "dim"));
  if (t == "empty") return SetExpr::empty(size_field(j, "dim"));
  if (t == "union") {
    std::vector<SetExpr> ms;
    for (const auto& m : array_field(j, "members")) ms.push_back(set_from(m));
    return SetExpr::union_of(size_field(j, "dim"), std::move(ms));
  }
  if (t == "singleton") return SetExpr::singleton(vec_from(field(j, "point")));
  if (t == "interval") return SetExpr::interval(interval_from(j));
  if (t == "epigraph") return SetExpr::epigraph(pq_from(field(j, "function")));
  if (t == "product") {
    std::vector<SetExpr> fs;
    for (const auto& f : array_field(j, "factors")) fs.push_back(set_from(f));
    return SetExpr::product(std::move(fs));
  }
  if (t == "embedded") {
    std::vector<std::size_t> coords;
    for (const auto& c : array_field(j, "coords")) {
      if (!c.is_number_unsigned()) schema("coords must be non-negative integers");
      coords.push_back(c.get<std::size_t>());
    }
    return SetExpr::embedded(set_from(field(j, "inner")), coords, size_field(j, "ambient"));
  }
  schema("unknown set type '" + t + "'");
}

Json to_json(const MappingExpr& m) {
  Json j;
  switch (m.kind()) {
    case MappingExpr::Kind::Epigraphical:
      j["type"] = "epigraphical";
      j["function"] = to_json(m.function());
      break;
    case MappingExpr::Kind::PolyhedralGraph:
      j["type"] = "polyhedral-graph";
      j["x_dim"] = m.x_dim();
      j["y_dim"] = m.y_dim();
      j["graph"] = to_json(m.graph());
      break;
    case MappingExpr::Kind::Product:
      j["type"] = "product";
      j["factors"] = array_of(m.factors(), [](const MappingExpr& f) { return to_json(f); });
      break;
  }
  return j;
}

MappingExpr mapping_from(const Json& j) {
  const std::string t = str_field(j, "type");
  if (t == "epigraphical") return MappingExpr::epigraphical(pq_from(field(j, "function")));
  if (t == "polyhedral-graph") {
    return MappingExpr::polyhedral_graph(size_field(j, "x_dim"), size_field(j, "y_dim"), set_from(field(j, "graph")));
  }
  if (t == "product") {
    std::vector<MappingExpr> fs;
    for (const auto& f : array_field(j, "factors")) fs.push_back(mapping_from(f));
    return MappingExpr::product(std::move(fs));
  }
  schema("unknown mapping type '" + t + "'");
}

Json to_json(const LevelSetMapping& l) {
  Json j;
  switch (l.kind()) {
    case LevelSetMapping::Kind::ConeTranslation:
      j["type"] = "cone-translation";
      j["K"] = to_json(l.cone());
      j["y_bar"] = to_json(l.y_bar());
      break;
    case LevelSetMapping::Kind::StrictPareto:
      j["type"] = "strict-pareto";
      j["dim"] = l.dim();
      if (l.kill_point()) j["kill_point"] = to_json(*l.kill_point());
      break;
    case LevelSetMapping::Kind::SingletonMap:
      j["type"] = "singleton";
      j["dim"] = l.dim();
      break;
    case LevelSetMapping::Kind::TableOnGrid:
      j["type"] = "table";
      j["step"] = to_json(l.step());
      j["shape"] = to_json(l.shape());
      j["entries"] = array_of(l.entries(), [](const std::pair<Vec, SetExpr>& e) {
        Json x;
        x["point"] = to_json(e.first);
        x["set"] = to_json(e.second);
        return x;
      });
      break;
  }
  return j;
}

LevelSetMapping levelset_from(const Json& j) {
  const std::string t = str_field(j, "type");
  if (t == "cone-translation") return LevelSetMapping::cone_translation(set_from(field(j, "K")), vec_from(field(j, "y_bar")));
  if (t == "strict-pareto") {
    std::optional<Vec> kill;
    if (const Json* k = optional_field(j, "kill_point")) kill = vec_from(*k);
    return LevelSetMapping::strict_pareto(size_field(j, "dim"), kill);
  }
  if (t == "singleton") return LevelSetMapping::singleton_map(size_field(j, "dim"));
  if (t == "table") {
    std::vector<std::pair<Vec, SetExpr>> es;
    for (const auto& e : array_field(j, "entries")) es.emplace_back(vec_from(field(e, "point")), set_from(field(e, "set")));
    return LevelSetMapping::table_on_grid(rational_from(field(j, "step")), set_from(field(j, "shape")), std::move(es));
  }
  schema("unknown level-set type '" + t + "'");
}

// ---- families ---------------------------------------------------------------

Json to_json(const MemberParam& p) {
  Json j;
  switch (p.kind) {
    case MemberParam::Kind::Index: j["index"] = p.index; break;
    case MemberParam::Kind::Scalar: j["t"] = to_json(p.t); break;
    case MemberParam::Kind::Point: j["y"] = to_json(p.y); break;
  }
  return j;
}

MemberParam param_from(const Json& j) {
  if (const Json* i = optional_field(j, "index")) {
    if (!i->is_number_integer()) schema("member index must be an integer");
    return MemberParam::of_index(i->get<long>());
  }
  if (const Json* t = optional_field(j, "t")) return MemberParam::of_scalar(rational_from(*t));
  if (const Json* y = optional_field(j, "y")) return MemberParam::of_point(vec_from(*y));
  schema("member parameter needs 'index', 't' or 'y'");
}

Json to_json(const SetFamily& f) {
  Json j;
  switch (f.kind()) {
    case SetFamily::Kind::Finite:
      j["type"] = "finite";
      j["dim"] = f.dim();
      j["members"] = array_of(f.finite_members(), [](const SetExpr& m) { return to_json(m); });
      break;
    case SetFamily::Kind::ParamInterval:
      j["type"] = "param-interval";
      j["domain"] = to_json(f.domain());
      j["base"] = to_json(f.base());
      j["direction"] = to_json(f.direction());
      break;
    case SetFamily::Kind::SingletonSeq:
      j["type"] = "singleton-seq";
      j["offset"] = to_json(f.offset());
      j["scale"] = to_json(f.seq_scale());
      break;
    case SetFamily::Kind::XiDelta:
      j["type"] = "xi-delta";
      j["levelset"] = to_json(f.levelset());
      j["y_bar"] = to_json(f.y_bar());
      j["delta"] = to_json(f.delta());
      break;
    case SetFamily::Kind::ProductWith:
      j["type"] = "product-with";
      j["omega"] = to_json(f.omega());
      j["inner"] = to_json(f.inner());
      break;
  }
  return j;
}

SetFamily family_from(const Json& j) {
  const std::string t = str_field(j, "type");
  if (t == "finite") {
    std::vector<SetExpr> ms;
    for (const auto& m : array_field(j, "members")) ms.push_back(set_from(m));
    return SetFamily::finite(size_field(j, "dim"), std::move(ms));
  }
  if (t == "param-interval") {
    return SetFamily::param_interval(interval_from(field(j, "domain")), set_from(field(j, "base")),
                                     vec_from(field(j, "direction")));
  }
  if (t == "singleton-seq") return SetFamily::singleton_seq(vec_from(field(j, "offset")), vec_from(field(j, "scale")));
  if (t == "xi-delta") {
    return xi_delta_family(levelset_from(field(j, "levelset")), vec_from(field(j, "y_bar")),
                           rational_from(field(j, "delta")));
  }
  if (t == "product-with") return product_family(set_from(field(j, "omega")), family_from(field(j, "inner")));
  schema("unknown family type '" + t + "'");
}

Json to_json(const RefutationTemplate& t) {
  Json j;
  j["name"] = t.name;
  j["property"] = property_str(t.property);
  if (t.cap) j["cap"] = to_json(*t.cap);
  j["c0"] = to_json(t.c0);
  j["c1"] = to_json(t.c1);
  j["c2"] = to_json(t.c2);
  j["e0"] = to_json(t.e0);
  j["e1"] = to_json(t.e1);
  j["e2"] = to_json(t.e2);
  j["eps_star"] = to_json(t.eps_star);
  return j;
}

RefutationTemplate template_from(const Json& j) {
  RefutationTemplate t;
  t.name = str_field(j, "name");
  t.property = parse_property(str_field(j, "property"));
  if (const Json* c = optional_field(j, "cap")) t.cap = rational_from(*c);
  t.c0 = vec_from(field(j, "c0"));
  t.c1 = optional_field(j, "c1") ? vec_from(field(j, "c1")) : zeros(t.c0.size());
  t.c2 = optional_field(j, "c2") ? vec_from(field(j, "c2")) : zeros(t.c0.size());
  if (t.c1.size() != t.c0.size() || t.c2.size() != t.c0.size()) schema("template offsets differ in length");
  if (const Json* e = optional_field(j, "e0")) t.e0 = rational_from(*e);
  if (const Json* e = optional_field(j, "e1")) t.e1 = rational_from(*e);
  if (const Json* e = optional_field(j, "e2")) t.e2 = rational_from(*e);
  if (const Json* e = optional_field(j, "eps_star")) t.eps_star = rational_from(*e);
  return t;
}

// ---- results ---------------------------------------------------------------

Json to_json(const FGCone& c) {
  Json j;
  j["dim"] = c.dim;
  j["generators"] = vecs(c.generators);
  j["lineality"] = vecs(c.lineality);
  return j;
}

Json to_json(const NormalCone& c) {
  Json j;
  j["in_set"] = c.in_set;
  j["cone"] = to_json(c.cone);
  return j;
}

Json to_json(const CoderivativeResult& c) {
  Json j;
  j["kind"] = coderivative_kind_str(c.kind);
  j["value"] = c.describe();
  switch (c.kind) {
    case CoderivativeResult::Kind::Point: j["point"] = to_json(c.a); break;
    case CoderivativeResult::Kind::Segment: j["ends"] = vecs({c.a, c.b}); break;
    case CoderivativeResult::Kind::Ray:
      j["origin"] = to_json(c.a);
      j["direction"] = to_json(c.b);
      break;
    default: break;
  }
  j["set"] = to_json(c.set);
  return j;
}

namespace {

Json params_json(const std::vector<MemberParam>& ps) {
  return array_of(ps, [](const MemberParam& p) { return to_json(p); });
}

}  // namespace

Json to_json(const CheckVerdict& v) {
  Json j;
  j["property"] = property_str(v.property);
  j["outcome"] = outcome_str(v.outcome);
  j["rho"] = v.rho ? to_json(*v.rho) : Json();
  if (v.eps_star) j["eps_star"] = to_json(*v.eps_star);
  if (!v.template_name.empty()) j["template"] = v.template_name;
  j["reason"] = v.reason;
  j["witnesses"] = array_of(v.witnesses, [](const WitnessRecord& w) {
    Json x;
    x["eps"] = to_json(w.eps);
    x["rho"] = to_json(w.rho);
    x["params"] = params_json(w.params);
    if (!w.shifts.empty()) x["shifts"] = vecs(w.shifts);
    return x;
  });
  j["evidence"] = array_of(v.evidence, [](const RefutationEvidence& e) {
    Json x;
    x["rho"] = to_json(e.rho);
    x["eps"] = to_json(e.eps);
    x["point"] = to_json(e.point);
    return x;
  });
  return j;
}

Json to_json(const MultiVerdict& v) {
  Json j;
  j["property"] = property_str(Property::ApproxStationary);
  j["outcome"] = outcome_str(v.outcome);
  j["reason"] = v.reason;
  j["witnesses"] = array_of(v.witnesses, [](const MultiWitness& w) {
    Json x;
    x["eps"] = to_json(w.eps);
    x["rho"] = to_json(w.rho);
    x["params"] = params_json(w.params);
    x["xs"] = vecs(w.xs);
    x["ys"] = vecs(w.ys);
    x["vs"] = vecs(w.vs);
    return x;
  });
  return j;
}

Json to_json(const DualCertificate& c) {
  Json j;
  j["kind"] = cert_kind_str(c.kind);
  j["eps"] = to_json(c.eps);
  j["flavor"] = flavor_str(c.flavor);
  if (c.kind == DualCertificate::Kind::MultiplierRule) {
    j["M"] = to_json(c.M);
    j["y_stars"] = vecs(c.y_stars);
  }
  j["tuples"] = array_of(c.tuples, [](const CertTuple& t) {
    Json x;
    x["role"] = t.role;
    x["index"] = t.index;
    if (t.param) x["param"] = to_json(*t.param);
    x["point"] = to_json(t.point);
    x["covector"] = to_json(t.covector);
    return x;
  });
  return j;
}

DualCertificate cert_from(const Json& j) {
  DualCertificate c;
  c.kind = parse_cert_kind(str_field(j, "kind"));
  c.eps = rational_from(field(j, "eps"));
  c.flavor = parse_flavor(str_field(j, "flavor"));
  if (c.kind == DualCertificate::Kind::MultiplierRule) {
    c.M = rational_from(field(j, "M"));
    c.y_stars = vecs_from(field(j, "y_stars"));
  }
  for (const auto& t : array_field(j, "tuples")) {
    CertTuple x;
    x.role = str_field(t, "role");
    x.index = size_field(t, "index");
    if (const Json* p = optional_field(t, "param")) x.param = param_from(*p);
    x.point = vec_from(field(t, "point"));
    if (const Json* cv = optional_field(t, "covector")) x.covector = vec_from(*cv);
    c.tuples.push_back(std::move(x));
  }
  return c;
}

Json to_json(const CertReport& r) {
  Json j;
  switch (r.status) {
    case CertReport::Status::Accepted: j["status"] = "Accepted"; break;
    case CertReport::Status::Rejected: j["status"] = "Rejected"; break;
    case CertReport::Status::Inconclusive: j["status"] = "Inconclusive"; break;
  }
  j["failures"] = r.failures;
  return j;
}

Json to_json(const QCReport& r) {
  Json j;
  j["flavor"] = flavor_str(r.flavor);
  j["status"] = qc_status_str(r.status);
  j["eps"] = r.status == QCReport::Status::Inconclusive ? Json() : to_json(r.eps);
  j["sufficient"] = qc_sufficient_str(r.sufficient);
  if (r.violation) j["violation"] = to_json(*r.violation);
  j["reason"] = r.reason;
  return j;
}

Json to_json(const AubinReport& r) {
  Json j;
  j["delta"] = to_json(r.delta);
  j["tau_upper"] = r.tau_upper ? to_json(*r.tau_upper) : Json();
  j["tau_lower"] = to_json(r.tau_lower);
  j["audit_ok"] = r.audit_ok();
  std::set<std::string> points;
  for (const auto& a : r.audit) points.insert(to_string(a.point));
  j["audit_points"] = points.size();
  if (!r.note.empty()) j["note"] = r.note;
  j["audit"] = array_of(r.audit, [](const AubinAudit& a) {
    Json x;
    x["point"] = to_json(a.point);
    x["flavor"] = flavor_str(a.flavor);
    x["normal"] = to_json(a.normal);
    x["lhs"] = to_json(a.lhs);
    x["rhs"] = to_json(a.rhs);
    x["ok"] = a.ok;
    return x;
  });
  return j;
}

Json to_json(const OPropertyReport& r) {
  Json j;
  j["grid"] = {{"depth", r.grid.depth}, {"spread", r.grid.spread}};
  Json props;
  for (int i = 1; i <= 6; ++i) {
    const OResult& o = r.o(i);
    Json x;
    x["verdict"] = o_verdict_str(o.verdict);
    if (o.y) x["y"] = to_json(*o.y);
    if (o.v) x["v"] = to_json(*o.v);
    if (o.radius) x["radius"] = to_json(*o.radius);
    if (!o.note.empty()) x["note"] = o.note;
    props["O" + std::to_string(i)] = x;
  }
  j["properties"] = props;
  return j;
}

// ---- problem files ------------------------------------------------------------

std::string problem_kind_str(ProblemFile::Kind k) {
  switch (k) {
    case ProblemFile::Kind::Triple: return "triple";
    case ProblemFile::Kind::Collection: return "collection";
    case ProblemFile::Kind::Multi: return "multi";
  }
  return "";
}

TripleProblem ProblemFile::triple() const {
  if (kind != Kind::Triple) throw MalformedInput("problem is a " + problem_kind_str(kind) + ", not a triple");
  return TripleProblem::make(mappings[0], *omega, families[0], x_bar, y_bars[0]);
}

MultiProblem ProblemFile::multi() const {
  if (kind == Kind::Triple) return MultiProblem::make(mappings, families, *omega, x_bar, y_bars);
  if (kind != Kind::Multi) throw MalformedInput("problem is a collection, not a mapping problem");
  return MultiProblem::make(mappings, families, *omega, x_bar, y_bars);
}

ProblemFile problem_from(const Json& j) {
  ProblemFile p;
  p.version = str_field(j, "version");
  if (p.version != "1") schema("unsupported version '" + p.version + "'");
  const std::string kind = str_field(j, "kind");
  if (kind == "triple") {
    p.kind = ProblemFile::Kind::Triple;
  } else if (kind == "collection") {
    p.kind = ProblemFile::Kind::Collection;
  } else if (kind == "multi") {
    p.kind = ProblemFile::Kind::Multi;
  } else {
    schema("unknown problem kind '" + kind + "'");
  }

  const Json& ref = field(j, "refpoint");
  p.x_bar = vec_from(field(ref, "x"));
  const std::size_t d = p.x_bar.size();
  if (p.kind == ProblemFile::Kind::Triple) {
    p.mappings.push_back(mapping_from(field(j, "mapping")));
    p.families.push_back(family_from(field(j, "family")));
    p.y_bars.push_back(vec_from(field(ref, "y")));
  } else {
    for (const auto& f : array_field(j, "families")) p.families.push_back(family_from(f));
    if (p.kind == ProblemFile::Kind::Multi) {
      for (const auto& m : array_field(j, "mappings")) p.mappings.push_back(mapping_from(m));
      p.y_bars = vecs_from(field(ref, "ys"));
    }
  }
  if (p.kind != ProblemFile::Kind::Collection) p.omega = set_from(field(j, "omega"));
  if (const Json* l = optional_field(j, "levelset")) p.levelset = levelset_from(*l);
  if (const Json* ts = optional_field(j, "refutation_templates")) {
    if (!ts->is_array()) schema("refutation_templates must be an array");
    for (const auto& t : *ts) p.templates.push_back(template_from(t));
  }

  // Cross references.
  if (p.kind == ProblemFile::Kind::Collection) {
    if (p.families.empty()) schema("a collection needs at least one family");
    for (const auto& f : p.families) {
      if (f.dim() != d) schema("family dimension differs from the reference point");
    }
  } else {
    if (p.mappings.empty() || p.mappings.size() != p.families.size() || p.mappings.size() != p.y_bars.size())
      schema("mappings, families and reference values must correspond one to one");
    if (p.omega->dim() != d) schema("omega dimension differs from the reference point");
    for (std::size_t i = 0; i < p.mappings.size(); ++i) {
      if (p.mappings[i].x_dim() != d || p.mappings[i].y_dim() != p.y_bars[i].size())
        schema("mapping " + std::to_string(i) + " does not match the reference point");
      if (p.families[i].dim() != p.y_bars[i].size())
        schema("family " + std::to_string(i) + " does not live in the image space");
    }
  }
  if (p.levelset && !p.y_bars.empty() && p.levelset->dim() != p.y_bars[0].size())
    schema("level-set dimension differs from the image space");
  std::size_t total = d;
  if (p.kind == ProblemFile::Kind::Triple) total += p.y_bars[0].size();
  if (const Json* s = optional_field(j, "space")) {
    if (!s->is_array()) schema("space must list factor dimensions");
    std::size_t sum = 0;
    for (const auto& k : *s) {
      if (!k.is_number_unsigned()) schema("factor dimensions must be non-negative integers");
      p.space.push_back(k.get<std::size_t>());
      sum += p.space.back();
    }
    if (sum != total) schema("space factors do not add up to the problem dimension");
  } else {
    p.space = {d};
    if (p.kind == ProblemFile::Kind::Triple) p.space.push_back(p.y_bars[0].size());
  }

  // Reference point feasibility.
  if (p.omega && !p.omega->contains(p.x_bar)) throw MalformedInput("infeasible refpoint: x is not in omega");
  for (std::size_t i = 0; i < p.mappings.size(); ++i) {
    if (!p.mappings[i].in_graph(p.x_bar, p.y_bars[i]))
      throw MalformedInput("infeasible refpoint: y" + (p.mappings.size() > 1 ? std::to_string(i) : "") +
                           " is not in F(x)");
  }
  return p;
}

Json to_json(const ProblemFile& p) {
  Json j;
  j["version"] = p.version;
  j["kind"] = problem_kind_str(p.kind);
  j["space"] = p.space;
  if (p.omega) j["omega"] = to_json(*p.omega);
  auto mappings = array_of(p.mappings, [](const MappingExpr& m) { return to_json(m); });
  auto families = array_of(p.families, [](const SetFamily& f) { return to_json(f); });
  if (p.kind == ProblemFile::Kind::Triple) {
    j["mapping"] = mappings[0];
    j["family"] = families[0];
  } else {
    if (p.kind == ProblemFile::Kind::Multi) j["mappings"] = mappings;
    j["families"] = families;
  }
  if (p.levelset) j["levelset"] = to_json(*p.levelset);
  Json ref;
  ref["x"] = to_json(p.x_bar);
  if (p.kind == ProblemFile::Kind::Triple) ref["y"] = to_json(p.y_bars[0]);
  if (p.kind == ProblemFile::Kind::Multi) ref["ys"] = vecs(p.y_bars);
  j["refpoint"] = ref;
  if (!p.templates.empty()) {
    j["refutation_templates"] = array_of(p.templates, [](const RefutationTemplate& t) { return to_json(t); });
  }
  return j;
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw MalformedInput(std::string("malformed JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace vex::io
