#include "vex/core/set_expr.hpp"

#include <sstream>
#include <variant>

#include "vex/core/errors.hpp"
#include "vex/core/lp.hpp"

namespace vex {

struct SetExpr::Node {
  struct Union {
    std::vector<SetExpr> members;
  };
  struct Product {
    std::vector<SetExpr> factors;
  };
  struct Embedded {
    SetExpr inner;
    std::vector<std::size_t> coords;
  };
  Kind kind;
  std::size_t dim;
  std::variant<HPolyhedron, Union, Vec, Interval1D, PQFunction, Product, Embedded> data;
};

SetExpr SetExpr::polyhedron(HPolyhedron p) {
  if (p.dim() == 0) throw MalformedInput("polyhedron of dimension zero");
  const auto d = p.dim();
  return SetExpr(std::make_shared<const Node>(Node{Kind::Polyhedron, d, std::move(p)}));
}

SetExpr SetExpr::space(std::size_t dim) { return polyhedron(HPolyhedron(dim)); }

SetExpr SetExpr::empty(std::size_t dim) { return union_of(dim, {}); }

SetExpr SetExpr::union_of(std::size_t dim, std::vector<SetExpr> members) {
  if (dim == 0) throw MalformedInput("union of dimension zero");
  for (const auto& m : members) {
    if (m.dim() != dim) throw MalformedInput("union member dimension mismatch");
  }
  return SetExpr(std::make_shared<const Node>(Node{Kind::Union, dim, Node::Union{std::move(members)}}));
}

SetExpr SetExpr::singleton(Vec point) {
  if (point.empty()) throw MalformedInput("singleton of dimension zero");
  const auto d = point.size();
  return SetExpr(std::make_shared<const Node>(Node{Kind::Singleton, d, std::move(point)}));
}

SetExpr SetExpr::interval(Interval1D i) {
  return SetExpr(std::make_shared<const Node>(Node{Kind::Interval, 1, i.canonical()}));
}

SetExpr SetExpr::epigraph(PQFunction f) {
  return SetExpr(std::make_shared<const Node>(Node{Kind::Epigraph, 2, std::move(f)}));
}

SetExpr SetExpr::product(std::vector<SetExpr> factors) {
  if (factors.empty()) throw MalformedInput("product of no factors");
  std::size_t d = 0;
  for (const auto& f : factors) d += f.dim();
  return SetExpr(std::make_shared<const Node>(Node{Kind::Product, d, Node::Product{std::move(factors)}}));
}

SetExpr SetExpr::embedded(SetExpr inner, std::vector<std::size_t> coords, std::size_t ambient) {
  if (coords.size() != inner.dim()) throw MalformedInput("embedding coordinate count mismatch");
  std::vector<bool> used(ambient, false);
  for (auto c : coords) {
    if (c >= ambient || used[c]) throw MalformedInput("embedding coordinates must be distinct and in range");
    used[c] = true;
  }
  return SetExpr(std::make_shared<const Node>(
      Node{Kind::Embedded, ambient, Node::Embedded{std::move(inner), std::move(coords)}}));
}

SetExpr::Kind SetExpr::kind() const { return node_->kind; }
std::size_t SetExpr::dim() const { return node_->dim; }

const HPolyhedron& SetExpr::poly() const { return std::get<HPolyhedron>(node_->data); }

const std::vector<SetExpr>& SetExpr::members() const {
  if (kind() == Kind::Product) return std::get<Node::Product>(node_->data).factors;
  return std::get<Node::Union>(node_->data).members;
}

const Vec& SetExpr::point() const { return std::get<Vec>(node_->data); }
const Interval1D& SetExpr::interval() const { return std::get<Interval1D>(node_->data); }
const PQFunction& SetExpr::function() const { return std::get<PQFunction>(node_->data); }
const SetExpr& SetExpr::inner() const { return std::get<Node::Embedded>(node_->data).inner; }
const std::vector<std::size_t>& SetExpr::coords() const { return std::get<Node::Embedded>(node_->data).coords; }

namespace {

Vec pick(const Vec& x, const std::vector<std::size_t>& coords) {
  Vec r;
  for (auto c : coords) r.push_back(x.at(c));
  return r;
}

}  // namespace

bool SetExpr::contains(const Vec& x) const {
  if (x.size() != dim()) throw MalformedInput("membership: dimension mismatch");
  switch (kind()) {
    case Kind::Polyhedron: return poly().contains(x);
    case Kind::Union:
      for (const auto& m : members()) {
        if (m.contains(x)) return true;
      }
      return false;
    case Kind::Singleton: return point() == x;
    case Kind::Interval: return interval().contains(x[0]);
    case Kind::Epigraph: return x[1] >= function()(x[0]);
    case Kind::Product: {
      std::size_t at = 0;
      for (const auto& f : members()) {
        if (!f.contains(slice(x, at, f.dim()))) return false;
        at += f.dim();
      }
      return true;
    }
    case Kind::Embedded: return inner().contains(pick(x, coords()));
  }
  return false;
}

SetExpr SetExpr::closure() const {
  switch (kind()) {
    case Kind::Polyhedron:
      if (!poly().has_strict()) return *this;
      if (!lp_feasible(poly()).feasible) return empty(dim());
      return polyhedron(poly().relaxed());
    case Kind::Union: {
      std::vector<SetExpr> ms;
      for (const auto& m : members()) ms.push_back(m.closure());
      return union_of(dim(), std::move(ms));
    }
    case Kind::Interval: return interval(interval().closure());
    case Kind::Product: {
      std::vector<SetExpr> fs;
      for (const auto& f : members()) fs.push_back(f.closure());
      return product(std::move(fs));
    }
    case Kind::Embedded: return embedded(inner().closure(), coords(), dim());
    default: return *this;
  }
}

SetExpr SetExpr::translate(const Vec& v) const {
  if (v.size() != dim()) throw MalformedInput("translation: dimension mismatch");
  switch (kind()) {
    case Kind::Polyhedron: return polyhedron(poly().translate(v));
    case Kind::Union: {
      std::vector<SetExpr> ms;
      for (const auto& m : members()) ms.push_back(m.translate(v));
      return union_of(dim(), std::move(ms));
    }
    case Kind::Singleton: return singleton(add(point(), v));
    case Kind::Interval: {
      Interval1D i = interval();
      if (i.lo.is_finite()) i.lo = ExtRational(i.lo.value() + v[0]);
      if (i.hi.is_finite()) i.hi = ExtRational(i.hi.value() + v[0]);
      return interval(i);
    }
    case Kind::Epigraph: return epigraph(function().translate(v[0], v[1]));
    case Kind::Product: {
      std::vector<SetExpr> fs;
      std::size_t at = 0;
      for (const auto& f : members()) {
        fs.push_back(f.translate(slice(v, at, f.dim())));
        at += f.dim();
      }
      return product(std::move(fs));
    }
    case Kind::Embedded: return embedded(inner().translate(pick(v, coords())), coords(), dim());
  }
  return *this;
}

SetExpr SetExpr::scale(const Rational& s) const {
  if (s.sign() <= 0) throw MalformedInput("scale factor must be positive");
  switch (kind()) {
    case Kind::Polyhedron: return polyhedron(poly().scale(s));
    case Kind::Union: {
      std::vector<SetExpr> ms;
      for (const auto& m : members()) ms.push_back(m.scale(s));
      return union_of(dim(), std::move(ms));
    }
    case Kind::Singleton: return singleton(vex::scale(point(), s));
    case Kind::Interval: {
      Interval1D i = interval();
      if (i.lo.is_finite()) i.lo = ExtRational(i.lo.value() * s);
      if (i.hi.is_finite()) i.hi = ExtRational(i.hi.value() * s);
      return interval(i);
    }
    case Kind::Epigraph: return epigraph(function().scale(s));
    case Kind::Product: {
      std::vector<SetExpr> fs;
      for (const auto& f : members()) fs.push_back(f.scale(s));
      return product(std::move(fs));
    }
    case Kind::Embedded: return embedded(inner().scale(s), coords(), dim());
  }
  return *this;
}

bool SetExpr::is_convex() const {
  switch (kind()) {
    case Kind::Polyhedron:
    case Kind::Singleton:
    case Kind::Interval: return true;
    case Kind::Union: return members().empty() || (members().size() == 1 && members()[0].is_convex());
    case Kind::Epigraph: return function().is_convex();
    case Kind::Product:
      for (const auto& f : members()) {
        if (!f.is_convex()) return false;
      }
      return true;
    case Kind::Embedded: return inner().is_convex();
  }
  return false;
}

std::string SetExpr::describe() const {
  std::ostringstream os;
  switch (kind()) {
    case Kind::Polyhedron: {
      os << "polyhedron{";
      bool first = true;
      for (const auto& r : poly().rows()) {
        if (!first) os << "; ";
        first = false;
        os << r.a << ' ' << rel_str(r.rel) << ' ' << r.b;
      }
      os << "} in R^" << dim();
      break;
    }
    case Kind::Union: {
      if (members().empty()) {
        os << "empty in R^" << dim();
        break;
      }
      os << "union(";
      for (std::size_t i = 0; i < members().size(); ++i) os << (i ? ", " : "") << members()[i].describe();
      os << ')';
      break;
    }
    case Kind::Singleton: os << '{' << point() << '}'; break;
    case Kind::Interval: os << interval().str(); break;
    case Kind::Epigraph: {
      os << "epi(";
      const auto& f = function();
      for (std::size_t i = 0; i < f.pieces().size(); ++i) {
        if (i) os << " | " << f.breakpoints()[i - 1] << " | ";
        const auto& p = f.pieces()[i];
        os << p.a2 << "x^2+" << p.a1 << "x+" << p.a0;
      }
      os << ')';
      break;
    }
    case Kind::Product: {
      for (std::size_t i = 0; i < members().size(); ++i) os << (i ? " x " : "") << members()[i].describe();
      break;
    }
    case Kind::Embedded: {
      os << "cyl(" << inner().describe() << " at [";
      for (std::size_t i = 0; i < coords().size(); ++i) os << (i ? "," : "") << coords()[i];
      os << "] in R^" << dim() << ')';
      break;
    }
  }
  return os.str();
}

IntervalSet as_interval_set(const SetExpr& s) {
  if (s.dim() != 1) throw UnsupportedClass("not a subset of the real line: " + s.describe());
  switch (s.kind()) {
    case SetExpr::Kind::Interval: return IntervalSet({s.interval()});
    case SetExpr::Kind::Singleton: return IntervalSet({Interval1D::point(s.point()[0])});
    case SetExpr::Kind::Polyhedron: {
      Interval1D i;
      for (const auto& r : s.poly().rows()) {
        const Rational& a = r.a[0];
        if (a.is_zero()) {
          const int sg = (-r.b).sign();
          const bool ok = r.rel == Rel::Le ? sg <= 0 : (r.rel == Rel::Lt ? sg < 0 : sg == 0);
          if (!ok) return IntervalSet();
          continue;
        }
        const Rational c = r.b / a;
        const bool closed = r.rel != Rel::Lt;
        Interval1D h;
        if (r.rel == Rel::Eq) h = Interval1D::point(c);
        else if (a.sign() > 0) h = Interval1D{ExtRational::neg_inf(), false, c, closed};
        else h = Interval1D{c, closed, ExtRational::pos_inf(), false};
        i = intersect(i, h);
      }
      return IntervalSet({i});
    }
    case SetExpr::Kind::Union: {
      IntervalSet r;
      for (const auto& m : s.members()) r = r.unite(as_interval_set(m));
      return r;
    }
    case SetExpr::Kind::Product: return as_interval_set(s.members()[0]);
    case SetExpr::Kind::Embedded: return as_interval_set(s.inner());
    default: break;
  }
  throw UnsupportedClass("not an interval set: " + s.describe());
}

SetExpr from_interval_set(const IntervalSet& s) {
  if (s.parts().size() == 1) return SetExpr::interval(s.parts()[0]);
  std::vector<SetExpr> ms;
  for (const auto& p : s.parts()) ms.push_back(SetExpr::interval(p));
  return SetExpr::union_of(1, std::move(ms));
}

}  // namespace vex
