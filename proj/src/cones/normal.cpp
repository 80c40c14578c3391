#include "vex/cones/normal.hpp"

#include <sstream>

#include "vex/core/lp.hpp"

namespace vex {

std::string flavor_str(ConeFlavor f) {
  switch (f) {
    case ConeFlavor::Frechet: return "frechet";
    case ConeFlavor::Clarke: return "clarke";
    case ConeFlavor::Convex: return "convex";
  }
  return "";
}

ConeFlavor parse_flavor(const std::string& s) {
  if (s == "frechet") return ConeFlavor::Frechet;
  if (s == "clarke") return ConeFlavor::Clarke;
  if (s == "convex") return ConeFlavor::Convex;
  throw MalformedInput("unknown cone flavor '" + s + "'");
}

namespace {

NormalCone polyhedron_normal(const HPolyhedron& p, const Vec& x) {
  if (!p.contains(x)) return NormalCone::not_in_set(p.dim());
  Matrix gens, lin;
  for (const auto& r : p.rows()) {
    if (r.rel == Rel::Eq) lin.push_back(r.a);
    else if (dot(r.a, x) == r.b) gens.push_back(r.a);
  }
  return {true, FGCone::generated(p.dim(), std::move(gens), std::move(lin))};
}

HPolyhedron interval_poly(const Interval1D& i) {
  HPolyhedron p(1);
  if (i.lo.is_finite()) p.add({Vec{Rational(-1)}, i.lo_closed ? Rel::Le : Rel::Lt, -i.lo.value()});
  if (i.hi.is_finite()) p.add({Vec{Rational(1)}, i.hi_closed ? Rel::Le : Rel::Lt, i.hi.value()});
  return p;
}

NormalCone epigraph_normal(const PQFunction& f, const Vec& x, ConeFlavor flavor) {
  const Rational v = f(x[0]);
  if (x[1] < v) return NormalCone::not_in_set(2);
  if (flavor == ConeFlavor::Convex && !f.is_convex()) {
    throw UnsupportedClass("convex normal cone of a nonconvex epigraph");
  }
  if (x[1] > v) return {true, FGCone::zero(2)};
  const Rational sm = f.left_slope(x[0]);
  const Rational sp = f.right_slope(x[0]);
  if (flavor == ConeFlavor::Frechet) {
    // Polar of the contingent cone, whose convex hull is generated by
    // (1, s+), (-1, -s-) and (0, 1).
    const FGCone t = FGCone::generated(2, {Vec{1, sp}, Vec{-1, -sm}, Vec{0, 1}});
    return {true, polar(t)};
  }
  return {true, FGCone::generated(2, {Vec{sm, -1}, Vec{sp, -1}})};
}

// Closure membership for union members.
bool closure_contains(const SetExpr& s, const Vec& x) { return s.closure().contains(x); }

}  // namespace

NormalCone normal_cone(const SetExpr& s, const Vec& x, ConeFlavor flavor) {
  if (x.size() != s.dim()) throw MalformedInput("normal cone: dimension mismatch");
  switch (s.kind()) {
    case SetExpr::Kind::Polyhedron: return polyhedron_normal(s.poly(), x);
    case SetExpr::Kind::Interval: return polyhedron_normal(interval_poly(s.interval()), x);
    case SetExpr::Kind::Singleton:
      if (s.point() != x) return NormalCone::not_in_set(s.dim());
      return {true, FGCone::whole(s.dim())};
    case SetExpr::Kind::Epigraph: return epigraph_normal(s.function(), x, flavor);
    case SetExpr::Kind::Union: {
      if (!s.contains(x)) return NormalCone::not_in_set(s.dim());
      if (s.members().size() == 1) return normal_cone(s.members()[0], x, flavor);
      if (flavor != ConeFlavor::Frechet) {
        throw UnsupportedClass(flavor_str(flavor) + " normal cone of a union of sets");
      }
      // Fréchet: polar of the union of member contingent cones at x.
      std::vector<FGCone> cones;
      for (const auto& m : s.members()) {
        if (!closure_contains(m, x)) continue;
        const auto n = normal_cone(m.closure(), x, ConeFlavor::Frechet);
        cones.push_back(n.cone);
      }
      return {true, cone_intersection(cones)};
    }
    case SetExpr::Kind::Product: {
      std::vector<FGCone> cones;
      std::size_t at = 0;
      for (const auto& f : s.members()) {
        const auto n = normal_cone(f, slice(x, at, f.dim()), flavor);
        if (!n.in_set) return NormalCone::not_in_set(s.dim());
        cones.push_back(n.cone);
        at += f.dim();
      }
      return {true, cone_product(cones)};
    }
    case SetExpr::Kind::Embedded: {
      Vec inner;
      for (auto c : s.coords()) inner.push_back(x[c]);
      const auto n = normal_cone(s.inner(), inner, flavor);
      if (!n.in_set) return NormalCone::not_in_set(s.dim());
      return {true, cone_embed(n.cone, s.dim(), s.coords())};
    }
  }
  throw UnsupportedClass("normal cone of " + s.describe());
}

FGCone clarke_tangent(const SetExpr& s, const Vec& x) {
  const auto n = normal_cone(s, x, ConeFlavor::Clarke);
  if (!n.in_set) throw MalformedInput("tangent cone at a point outside the set");
  return polar(n.cone);
}

std::string coderivative_kind_str(CoderivativeResult::Kind k) {
  switch (k) {
    case CoderivativeResult::Kind::Empty: return "empty";
    case CoderivativeResult::Kind::Point: return "point";
    case CoderivativeResult::Kind::Segment: return "segment";
    case CoderivativeResult::Kind::Ray: return "ray";
    case CoderivativeResult::Kind::Polyhedral: return "polyhedral";
  }
  return "";
}

std::string CoderivativeResult::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Empty: os << "{}"; break;
    case Kind::Point: os << '{' << a << '}'; break;
    case Kind::Segment: os << "[" << a << ", " << b << "]"; break;
    case Kind::Ray: os << a << " + R+ " << b; break;
    case Kind::Polyhedral: {
      os << "{x* :";
      for (const auto& r : set.rows()) os << ' ' << r.a << ' ' << rel_str(r.rel) << ' ' << r.b << ';';
      os << '}';
      break;
    }
  }
  return os.str();
}

CoderivativeResult slice_coderivative(const FGCone& graph_normal, std::size_t x_dim, const Vec& y_star) {
  const std::size_t m = y_star.size();
  if (graph_normal.dim != x_dim + m) throw MalformedInput("coderivative: dimension mismatch");
  CoderivativeResult out;
  out.set = HPolyhedron(x_dim);
  // r·(x*, -y*) <= 0  <=>  r_x·x* <= r_y·y*
  for (const auto& r : h_rows_of(graph_normal)) {
    out.set.add({slice(r, 0, x_dim), Rel::Le, dot(slice(r, x_dim, m), y_star)});
  }
  if (!lp_feasible(out.set).feasible) {
    out.kind = CoderivativeResult::Kind::Empty;
    return out;
  }
  std::vector<LpResult> lo, hi;
  bool bounded = true, point = true;
  for (std::size_t i = 0; i < x_dim; ++i) {
    lo.push_back(lp_optimize(out.set, unit(x_dim, i), false));
    hi.push_back(lp_optimize(out.set, unit(x_dim, i), true));
    const bool b = lo.back().status == LpStatus::Optimal && hi.back().status == LpStatus::Optimal;
    bounded = bounded && b;
    point = point && b && lo.back().value == hi.back().value;
  }
  if (point) {
    out.kind = CoderivativeResult::Kind::Point;
    for (std::size_t i = 0; i < x_dim; ++i) out.a.push_back(lo[i].value);
    return out;
  }
  if (x_dim != 1) {
    out.kind = CoderivativeResult::Kind::Polyhedral;
    return out;
  }
  const bool has_lo = lo[0].status == LpStatus::Optimal;
  const bool has_hi = hi[0].status == LpStatus::Optimal;
  if (has_lo && has_hi) {
    out.kind = CoderivativeResult::Kind::Segment;
    out.a = Vec{lo[0].value};
    out.b = Vec{hi[0].value};
  } else if (has_lo || has_hi) {
    out.kind = CoderivativeResult::Kind::Ray;
    out.a = Vec{has_lo ? lo[0].value : hi[0].value};
    out.b = Vec{has_lo ? Rational(1) : Rational(-1)};
  } else {
    out.kind = CoderivativeResult::Kind::Polyhedral;
  }
  return out;
}

CoderivativeResult coderivative(const MappingExpr& F, const Vec& x, const Vec& y, const Vec& y_star,
                                ConeFlavor flavor) {
  if (x.size() != F.x_dim() || y.size() != F.y_dim() || y_star.size() != F.y_dim()) {
    throw MalformedInput("coderivative: dimension mismatch");
  }
  const auto n = normal_cone(F.graph(), concat(x, y), flavor);
  if (!n.in_set) throw NotInGraph("(" + to_string(x) + ", " + to_string(y) + ") is not in the graph");
  return slice_coderivative(n.cone, F.x_dim(), y_star);
}

}  // namespace vex
