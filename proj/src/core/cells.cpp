#include "vex/core/cells.hpp"

#include "vex/core/algebraic.hpp"
#include "vex/core/errors.hpp"
#include "vex/core/lp.hpp"

namespace vex {

namespace {

Cell from_poly(const HPolyhedron& p) { return Cell{QSystem::from(p), false}; }

Cell lift(const Cell& c, std::size_t total, const std::vector<std::size_t>& coords) {
  Cell out;
  out.unsupported = c.unsupported;
  out.sys.dim = total;
  out.sys.contradiction = c.sys.contradiction;
  if (c.sys.qvar) out.sys.qvar = coords[*c.sys.qvar];
  for (const auto& r : c.sys.rows) {
    QRow q{zeros(total), r.q, r.rel, r.b};
    for (std::size_t j = 0; j < coords.size(); ++j) q.a[coords[j]] = r.a[j];
    out.sys.rows.push_back(std::move(q));
  }
  return out;
}

Cell meet(const Cell& x, const Cell& y) {
  Cell out = x;
  out.unsupported = x.unsupported || y.unsupported;
  out.sys.contradiction = x.sys.contradiction || y.sys.contradiction;
  if (y.sys.qvar) {
    if (out.sys.qvar && *out.sys.qvar != *y.sys.qvar) out.unsupported = true;
    else out.sys.qvar = y.sys.qvar;
  }
  out.sys.rows.insert(out.sys.rows.end(), y.sys.rows.begin(), y.sys.rows.end());
  return out;
}

// Linear rows only; a necessary condition for nonemptiness.
bool linear_part_feasible(const Cell& c) {
  if (c.sys.contradiction) return false;
  HPolyhedron p(c.sys.dim);
  for (const auto& r : c.sys.rows) {
    if (r.q.is_zero()) p.add({r.a, r.rel, r.b});
  }
  return lp_feasible(p).feasible;
}

std::vector<Cell> epigraph_cells(const PQFunction& f) {
  std::vector<Cell> out;
  const auto& bps = f.breakpoints();
  for (std::size_t i = 0; i < f.pieces().size(); ++i) {
    const auto& p = f.pieces()[i];
    Cell c;
    c.sys.dim = 2;
    // a2·x² + a1·x + a0 <= y
    c.sys.rows.push_back({Vec{p.a1, Rational(-1)}, p.a2, Rel::Le, -p.a0});
    if (!p.a2.is_zero()) c.sys.qvar = 0;
    if (i > 0) c.sys.rows.push_back({Vec{Rational(-1), Rational(0)}, Rational(0), Rel::Le, -bps[i - 1]});
    if (i < bps.size()) c.sys.rows.push_back({Vec{Rational(1), Rational(0)}, Rational(0), Rel::Le, bps[i]});
    out.push_back(std::move(c));
  }
  return out;
}

HPolyhedron interval_poly(const Interval1D& i) {
  HPolyhedron p(1);
  if (i.lo.is_finite()) p.add({Vec{Rational(-1)}, i.lo_closed ? Rel::Le : Rel::Lt, -i.lo.value()});
  if (i.hi.is_finite()) p.add({Vec{Rational(1)}, i.hi_closed ? Rel::Le : Rel::Lt, i.hi.value()});
  return p;
}

}  // namespace

std::vector<Cell> cells_of(const SetExpr& s) {
  switch (s.kind()) {
    case SetExpr::Kind::Polyhedron: return {from_poly(s.poly())};
    case SetExpr::Kind::Union: {
      std::vector<Cell> out;
      for (const auto& m : s.members()) {
        auto cs = cells_of(m);
        out.insert(out.end(), cs.begin(), cs.end());
      }
      return out;
    }
    case SetExpr::Kind::Singleton: {
      HPolyhedron p(s.dim());
      for (std::size_t i = 0; i < s.dim(); ++i) p.add({unit(s.dim(), i), Rel::Eq, s.point()[i]});
      return {from_poly(p)};
    }
    case SetExpr::Kind::Interval:
      if (s.interval().empty()) return {};
      return {from_poly(interval_poly(s.interval()))};
    case SetExpr::Kind::Epigraph: return epigraph_cells(s.function());
    case SetExpr::Kind::Product: {
      std::vector<Cell> acc;
      Cell start;
      start.sys.dim = s.dim();
      acc.push_back(start);
      std::size_t at = 0;
      for (const auto& f : s.members()) {
        std::vector<std::size_t> coords;
        for (std::size_t j = 0; j < f.dim(); ++j) coords.push_back(at + j);
        std::vector<Cell> next;
        for (const auto& fc : cells_of(f)) {
          const Cell lifted = lift(fc, s.dim(), coords);
          for (const auto& a : acc) next.push_back(meet(a, lifted));
        }
        acc = std::move(next);
        at += f.dim();
      }
      return acc;
    }
    case SetExpr::Kind::Embedded: {
      std::vector<Cell> out;
      for (const auto& c : cells_of(s.inner())) out.push_back(lift(c, s.dim(), s.coords()));
      return out;
    }
  }
  return {};
}

DecideResult decide_cell(const Cell& c) {
  if (c.sys.contradiction) return {Decision::Empty, std::nullopt, ""};
  if (c.unsupported) return {Decision::Unsupported, std::nullopt, "two squared coordinates in one system"};
  bool quadratic = false;
  for (const auto& r : c.sys.rows) quadratic = quadratic || !r.q.is_zero();
  if (!quadratic) {
    const auto f = lp_feasible(c.sys.linear_part());
    if (!f.feasible) return {};
    return {Decision::Nonempty, f.witness, ""};
  }
  const std::size_t k = *c.sys.qvar;
  QSystem s = c.sys;
  for (std::size_t j = 0; j < s.dim && !s.contradiction; ++j) {
    if (j != k) s = fm_eliminate(s, j);
  }
  if (s.contradiction) return {};
  std::vector<UniCondition> conds;
  for (const auto& r : s.rows) conds.push_back({UniPoly{r.q, r.a[k], -r.b}, r.rel});
  const auto d = decide_univariate(conds);
  if (!d.feasible) return {};
  if (!d.witness) return {Decision::Nonempty, std::nullopt, "only irrational points"};
  // Fix the squared coordinate and solve the remaining linear system.
  HPolyhedron rest(c.sys.dim);
  const Rational x = *d.witness;
  for (const auto& r : c.sys.rows) rest.add({r.a, r.rel, r.b - r.q * x * x});
  rest.add({unit(c.sys.dim, k), Rel::Eq, x});
  const auto f = lp_feasible(rest);
  if (!f.feasible) throw std::logic_error("projection and lift disagree");
  return {Decision::Nonempty, f.witness, ""};
}

DecideResult decide_intersection(const std::vector<SetExpr>& sets) {
  if (sets.empty()) throw MalformedInput("intersection of no sets");
  const std::size_t n = sets[0].dim();
  for (const auto& s : sets) {
    if (s.dim() != n) throw MalformedInput("intersection: dimension mismatch");
  }
  std::vector<Cell> acc;
  {
    Cell start;
    start.sys.dim = n;
    acc.push_back(start);
  }
  for (const auto& s : sets) {
    std::vector<Cell> next;
    const auto cs = cells_of(s);
    for (const auto& a : acc) {
      for (const auto& c : cs) {
        Cell m = meet(a, c);
        if (linear_part_feasible(m)) next.push_back(std::move(m));
      }
    }
    acc = std::move(next);
    if (acc.empty()) return {};
  }
  bool unsupported = false;
  std::optional<DecideResult> irrational;
  for (const auto& c : acc) {
    auto r = decide_cell(c);
    if (r.status == Decision::Nonempty) {
      if (r.witness) return r;
      if (!irrational) irrational = r;
    }
    if (r.status == Decision::Unsupported) unsupported = true;
  }
  if (irrational) return *irrational;
  if (unsupported) return {Decision::Unsupported, std::nullopt, "two squared coordinates in one system"};
  return {};
}

DecideResult distance_below(const Vec& p, const SetExpr& s, const Rational& r) {
  if (p.size() != s.dim()) throw MalformedInput("distance: dimension mismatch");
  if (r.sign() <= 0) return {};
  return decide_intersection({s, SetExpr::polyhedron(HPolyhedron::box(p, r, true))});
}

}  // namespace vex
