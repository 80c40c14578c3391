#include "vex/core/mapping.hpp"

#include <sstream>

#include "vex/core/errors.hpp"
#include "vex/core/pq_inf.hpp"

namespace vex {

MappingExpr MappingExpr::epigraphical(PQFunction f) {
  MappingExpr m(Kind::Epigraphical, 1, 1, SetExpr::epigraph(f));
  m.fn_ = std::move(f);
  return m;
}

MappingExpr MappingExpr::polyhedral_graph(std::size_t x_dim, std::size_t y_dim, SetExpr graph) {
  if (x_dim == 0 || y_dim == 0) throw MalformedInput("mapping spaces must be nonzero-dimensional");
  if (graph.dim() != x_dim + y_dim) throw MalformedInput("graph dimension must equal x_dim + y_dim");
  return MappingExpr(Kind::PolyhedralGraph, x_dim, y_dim, std::move(graph));
}

MappingExpr MappingExpr::product(std::vector<MappingExpr> factors) {
  if (factors.empty()) throw MalformedInput("product of no mappings");
  std::size_t xd = 0, yd = 0;
  for (const auto& f : factors) {
    xd += f.x_dim();
    yd += f.y_dim();
  }
  // Product of the graphs lives in (x_1, y_1, x_2, y_2, ...); place each
  // block at its (x, y) position.
  std::vector<SetExpr> gs;
  std::vector<std::size_t> coords;
  std::size_t xo = 0, yo = xd;
  for (const auto& f : factors) {
    gs.push_back(f.graph());
    for (std::size_t j = 0; j < f.x_dim(); ++j) coords.push_back(xo + j);
    for (std::size_t j = 0; j < f.y_dim(); ++j) coords.push_back(yo + j);
    xo += f.x_dim();
    yo += f.y_dim();
  }
  MappingExpr m(Kind::Product, xd, yd, SetExpr::embedded(SetExpr::product(std::move(gs)), coords, xd + yd));
  m.factors_ = std::make_shared<const std::vector<MappingExpr>>(std::move(factors));
  return m;
}

bool MappingExpr::in_graph(const Vec& x, const Vec& y) const {
  if (x.size() != x_dim_ || y.size() != y_dim_) throw MalformedInput("graph point dimension mismatch");
  return graph_.contains(concat(x, y));
}

namespace {

// {y : (x, y) in S} for graphs built from polyhedra and points.
SetExpr section(const SetExpr& s, const Vec& x, std::size_t y_dim) {
  const std::size_t xd = x.size();
  switch (s.kind()) {
    case SetExpr::Kind::Polyhedron: {
      HPolyhedron out(y_dim);
      for (const auto& r : s.poly().rows()) {
        out.add({slice(r.a, xd, y_dim), r.rel, r.b - dot(slice(r.a, 0, xd), x)});
      }
      return SetExpr::polyhedron(std::move(out));
    }
    case SetExpr::Kind::Union: {
      std::vector<SetExpr> ms;
      for (const auto& m : s.members()) ms.push_back(section(m, x, y_dim));
      return SetExpr::union_of(y_dim, std::move(ms));
    }
    case SetExpr::Kind::Singleton:
      if (slice(s.point(), 0, xd) != x) return SetExpr::empty(y_dim);
      return SetExpr::singleton(slice(s.point(), xd, y_dim));
    case SetExpr::Kind::Product: {
      // Split only at a factor boundary equal to the x block.
      std::size_t at = 0;
      std::vector<SetExpr> xs, ys;
      for (const auto& f : s.members()) {
        if (at < xd && at + f.dim() > xd) throw UnsupportedClass("graph factor straddles the x/y split");
        (at < xd ? xs : ys).push_back(f);
        at += f.dim();
      }
      for (std::size_t i = 0, o = 0; i < xs.size(); o += xs[i].dim(), ++i) {
        if (!xs[i].contains(slice(x, o, xs[i].dim()))) return SetExpr::empty(y_dim);
      }
      if (ys.size() == 1) return ys[0];
      return SetExpr::product(std::move(ys));
    }
    default: break;
  }
  throw UnsupportedClass("cannot evaluate mapping with graph " + s.describe());
}

}  // namespace

SetExpr MappingExpr::value_at(const Vec& x) const {
  if (x.size() != x_dim_) throw MalformedInput("mapping argument dimension mismatch");
  switch (kind_) {
    case Kind::Epigraphical: return SetExpr::interval({fn_(x[0]), true, ExtRational::pos_inf(), false});
    case Kind::PolyhedralGraph: return section(graph_, x, y_dim_);
    case Kind::Product: {
      std::vector<SetExpr> vs;
      std::size_t at = 0;
      for (const auto& f : *factors_) {
        vs.push_back(f.value_at(slice(x, at, f.x_dim())));
        at += f.x_dim();
      }
      return SetExpr::product(std::move(vs));
    }
  }
  return SetExpr::empty(y_dim_);
}

std::string MappingExpr::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Epigraphical: os << "x -> [f(x), inf) with " << graph_.describe(); break;
    case Kind::PolyhedralGraph: os << "graph " << graph_.describe(); break;
    case Kind::Product:
      for (std::size_t i = 0; i < factors_->size(); ++i) os << (i ? " x " : "") << (*factors_)[i].describe();
      break;
  }
  return os.str();
}

SetExpr image_of(const MappingExpr& F, const SetExpr& domain) {
  if (F.kind() != MappingExpr::Kind::Epigraphical) throw UnsupportedClass("image_of needs an epigraphical mapping");
  const IntervalSet d = as_interval_set(domain);
  if (d.empty()) return SetExpr::empty(1);
  InfResult best{ExtRational::pos_inf(), false};
  for (const auto& part : d.parts()) {
    const auto r = pq_inf(F.function(), part);
    if (r.value < best.value) best = r;
    else if (r.value == best.value) best.attained = best.attained || r.attained;
  }
  return SetExpr::interval({best.value, best.attained && best.value.is_finite(), ExtRational::pos_inf(), false});
}

}  // namespace vex
