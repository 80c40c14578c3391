#include "vex/core/set_ops.hpp"

#include "vex/core/errors.hpp"
#include "vex/core/lp.hpp"

namespace vex {

HPolyhedron interval_rows(const Interval1D& i) {
  HPolyhedron p(1);
  if (i.lo.is_finite()) p.add({Vec{Rational(-1)}, i.lo_closed ? Rel::Le : Rel::Lt, -i.lo.value()});
  if (i.hi.is_finite()) p.add({Vec{Rational(1)}, i.hi_closed ? Rel::Le : Rel::Lt, i.hi.value()});
  return p;
}

std::optional<HPolyhedron> as_hpolyhedron(const SetExpr& s) {
  switch (s.kind()) {
    case SetExpr::Kind::Polyhedron: return s.poly();
    case SetExpr::Kind::Interval: return interval_rows(s.interval());
    case SetExpr::Kind::Singleton: {
      HPolyhedron p(s.dim());
      for (std::size_t j = 0; j < s.dim(); ++j) p.add({unit(s.dim(), j), Rel::Eq, s.point()[j]});
      return p;
    }
    case SetExpr::Kind::Product: {
      HPolyhedron out(s.dim());
      std::size_t at = 0;
      for (const auto& f : s.members()) {
        auto fp = as_hpolyhedron(f);
        if (!fp) return std::nullopt;
        std::vector<std::size_t> coords;
        for (std::size_t j = 0; j < f.dim(); ++j) coords.push_back(at + j);
        out.add_all(fp->embed(s.dim(), coords));
        at += f.dim();
      }
      return out;
    }
    case SetExpr::Kind::Embedded: {
      auto ip = as_hpolyhedron(s.inner());
      if (!ip) return std::nullopt;
      return ip->embed(s.dim(), s.coords());
    }
    case SetExpr::Kind::Union:
      if (s.members().size() == 1) return as_hpolyhedron(s.members()[0]);
      return std::nullopt;
    case SetExpr::Kind::Epigraph: return std::nullopt;
  }
  return std::nullopt;
}

SetExpr puncture(const SetExpr& s, const Vec& p) {
  if (p.size() != s.dim()) throw MalformedInput("puncture: dimension mismatch");
  if (!s.contains(p)) return s;
  if (s.kind() == SetExpr::Kind::Union) {
    std::vector<SetExpr> parts;
    for (const auto& m : s.members()) parts.push_back(puncture(m, p));
    return SetExpr::union_of(s.dim(), std::move(parts));
  }
  if (s.kind() == SetExpr::Kind::Singleton) return SetExpr::empty(s.dim());
  auto poly = as_hpolyhedron(s);
  if (!poly) throw UnsupportedClass("puncture of " + s.describe());
  std::vector<SetExpr> parts;
  for (std::size_t j = 0; j < s.dim(); ++j) {
    HPolyhedron below = *poly;
    below.add({unit(s.dim(), j), Rel::Lt, p[j]});
    HPolyhedron above = *poly;
    above.add({unit(s.dim(), j, -1), Rel::Lt, -p[j]});
    for (auto* h : {&below, &above}) {
      if (lp_feasible(*h).feasible) parts.push_back(SetExpr::polyhedron(*h));
    }
  }
  return SetExpr::union_of(s.dim(), std::move(parts));
}

namespace {

std::vector<HPolyhedron> poly_complement(const HPolyhedron& p) {
  std::vector<HPolyhedron> out;
  const std::size_t n = p.dim();
  for (const auto& r : p.rows()) {
    switch (r.rel) {
      case Rel::Le: out.push_back(HPolyhedron(n, {{neg(r.a), Rel::Lt, -r.b}})); break;
      case Rel::Lt: out.push_back(HPolyhedron(n, {{neg(r.a), Rel::Le, -r.b}})); break;
      case Rel::Eq:
        out.push_back(HPolyhedron(n, {{r.a, Rel::Lt, r.b}}));
        out.push_back(HPolyhedron(n, {{neg(r.a), Rel::Lt, -r.b}}));
        break;
    }
  }
  return out;
}

}  // namespace

std::vector<HPolyhedron> complement_regions(const SetExpr& s) {
  const std::size_t n = s.dim();
  if (s.kind() == SetExpr::Kind::Union) {
    // ∁(∪ M_k) = ∩ ∁M_k, distributed over the region lists.
    std::vector<HPolyhedron> acc{HPolyhedron(n)};
    for (const auto& m : s.members()) {
      const auto regions = complement_regions(m);
      std::vector<HPolyhedron> next;
      for (const auto& a : acc) {
        for (const auto& r : regions) {
          HPolyhedron both = intersect(a, r);
          if (lp_feasible(both).feasible) next.push_back(std::move(both));
        }
      }
      acc = std::move(next);
      if (acc.empty()) break;
    }
    return acc;
  }
  auto poly = as_hpolyhedron(s);
  if (!poly) throw UnsupportedClass("complement of " + s.describe());
  return poly_complement(*poly);
}

InclusionResult included(const SetExpr& a, const SetExpr& b) {
  if (a.dim() != b.dim()) throw MalformedInput("inclusion: dimension mismatch");
  InclusionResult out;
  std::vector<HPolyhedron> regions;
  try {
    regions = complement_regions(b);
  } catch (const UnsupportedClass&) {
    out.status = Decision::Unsupported;
    return out;
  }
  for (const auto& r : regions) {
    const auto d = decide_intersection({a, SetExpr::polyhedron(r)});
    if (d.status == Decision::Empty) continue;
    out.status = d.status;
    out.witness = d.witness;
    if (d.status == Decision::Nonempty) return out;
  }
  return out;
}

SetExpr meet_polyhedral(const std::vector<SetExpr>& sets) {
  if (sets.empty()) throw MalformedInput("meet of no sets");
  HPolyhedron out(sets[0].dim());
  for (const auto& s : sets) {
    auto p = as_hpolyhedron(s);
    if (!p) throw UnsupportedClass("polyhedral meet with " + s.describe());
    out.add_all(*p);
  }
  return SetExpr::polyhedron(out);
}

}  // namespace vex
