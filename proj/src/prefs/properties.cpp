#include "vex/prefs/properties.hpp"

#include <algorithm>
#include <random>

#include "vex/core/algebraic.hpp"
#include "vex/core/cells.hpp"
#include "vex/core/distance.hpp"
#include "vex/core/errors.hpp"
#include "vex/core/fm.hpp"
#include "vex/core/set_ops.hpp"

namespace vex {

std::string o_verdict_str(OVerdict v) {
  switch (v) {
    case OVerdict::Holds: return "Holds";
    case OVerdict::HoldsOnGrid: return "HoldsOnGrid";
    case OVerdict::Fails: return "Fails";
    case OVerdict::Inconclusive: return "Inconclusive";
  }
  return "";
}

std::string bridge_status_str(BridgeReport::Status s) {
  switch (s) {
    case BridgeReport::Status::Confirmed: return "Confirmed";
    case BridgeReport::Status::Vacuous: return "Vacuous";
    case BridgeReport::Status::HypothesisUnmet: return "HypothesisUnmet";
    case BridgeReport::Status::Unconfirmed: return "Unconfirmed";
    case BridgeReport::Status::Violation: return "Violation";
  }
  return "";
}

namespace {

// ȳ + r·c for c in a fixed offset lattice; coarser in three or more
// dimensions to keep the pool small.
std::vector<Vec> pool(const Vec& y_bar, const Rational& r) {
  std::vector<Rational> cs{Rational(-3, 4), Rational(-1, 4), 0, Rational(1, 4), Rational(3, 4)};
  if (y_bar.size() >= 3) cs = {Rational(-3, 4), 0, Rational(3, 4)};
  std::vector<Vec> out;
  std::vector<std::size_t> idx(y_bar.size(), 0);
  while (true) {
    Vec p = y_bar;
    for (std::size_t j = 0; j < p.size(); ++j) p[j] += r * cs[idx[j]];
    out.push_back(std::move(p));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == cs.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

OResult fail(std::optional<Vec> y, std::optional<Vec> v, std::string note) {
  OResult r;
  r.verdict = OVerdict::Fails;
  r.y = std::move(y);
  r.v = std::move(v);
  r.note = std::move(note);
  return r;
}

OResult verdict(OVerdict v, std::string note = "") {
  OResult r;
  r.verdict = v;
  r.note = std::move(note);
  return r;
}

std::vector<Rational> radii(int from, int to) {
  std::vector<Rational> out;
  for (int k = from; k <= to; ++k) out.push_back(pow2(-k));
  return out;
}

OResult check_o1(const LevelSetMapping& l, const Vec& y_bar, const SetExpr& circ, const OGrid& g) {
  bool open_level = false;
  for (const auto& eps : radii(1, g.depth)) {
    const auto near = distance_below(y_bar, circ, eps);
    if (near.status == Decision::Unsupported) return verdict(OVerdict::Inconclusive, near.reason);
    if (near.empty()) {
      // The infimum over an empty set is +inf.
      OResult r = fail(y_bar, std::nullopt, "L°(ȳ) misses the ball");
      r.radius = eps;
      return r;
    }
    std::vector<Vec> ys = pool(y_bar, eps);
    if (near.witness) ys.insert(ys.begin(), *near.witness);
    bool found = false;
    for (const auto& y : ys) {
      if (!(norm_inf(sub(y, y_bar)) < eps) || !circ.contains(y)) continue;
      if (distance_below(y_bar, l.at(y), eps).nonempty()) {
        found = true;
        break;
      }
    }
    if (!found) open_level = true;
  }
  if (open_level) return verdict(OVerdict::Inconclusive, "no sampled point brings L(y) close at some level");
  return verdict(OVerdict::HoldsOnGrid);
}

OResult check_o2(const Vec& y_bar, const SetExpr& circ, const OGrid& g) {
  try {
    const ExtRational d = distance(y_bar, circ);
    if (d == ExtRational(0)) return verdict(OVerdict::Holds);
    return fail(y_bar, std::nullopt, "d(ȳ, L°(ȳ)) = " + d.str());
  } catch (const Error&) {
  }
  for (const auto& eps : radii(1, g.depth)) {
    const auto near = distance_below(y_bar, circ, eps);
    if (near.status == Decision::Unsupported) return verdict(OVerdict::Inconclusive, near.reason);
    if (near.empty()) {
      OResult r = fail(y_bar, std::nullopt, "L°(ȳ) misses the ball");
      r.radius = eps;
      return r;
    }
  }
  return verdict(OVerdict::HoldsOnGrid);
}

// Local satiation is structural for every variant: y ∈ y - ȳ + cl K needs
// ȳ ∈ cl K, strict Pareto and singleton sets contain y in their closure, and
// a table differs from y + shape only at isolated grid points.
OResult check_o4(const LevelSetMapping& l, const Vec& y_bar) {
  if (!l.closure_at(y_bar).contains(y_bar)) return fail(y_bar, std::nullopt, "ȳ ∉ cl L(ȳ)");
  if (l.kind() != LevelSetMapping::Kind::TableOnGrid) return verdict(OVerdict::Holds);
  if (l.shape().closure().contains(zeros(l.dim()))) return verdict(OVerdict::Holds);
  // Off-grid points arbitrarily close to ȳ use the shape.
  for (int k = 2;; ++k) {
    Vec y = y_bar;
    y[0] += l.step() * pow2(-k) / 3;
    const bool entry = std::any_of(l.entries().begin(), l.entries().end(), [&](const auto& e) { return e.first == y; });
    if (!entry) return fail(y, std::nullopt, "y ∉ cl L(y) for off-grid y near ȳ");
  }
}

// For all sampled y ∈ base: cl L(y) ⊆ target.
OResult check_inclusion(const LevelSetMapping& l, const Vec& y_bar, const SetExpr& base, const SetExpr& target,
                        const OGrid& g) {
  const auto any = decide_intersection({base});
  if (any.empty()) return verdict(OVerdict::Holds, "vacuous");
  bool unknown = false;
  for (const auto& r : radii(-g.spread, g.depth)) {
    std::vector<Vec> ys = pool(y_bar, r);
    const auto w = distance_below(y_bar, base, r);
    if (w.witness) ys.insert(ys.begin(), *w.witness);
    for (const auto& y : ys) {
      if (!base.contains(y)) continue;
      try {
        const auto inc = included(l.closure_at(y), target);
        if (inc.status == Decision::Unsupported) {
          unknown = true;
        } else if (!inc.included()) {
          if (!inc.witness) {
            unknown = true;
            continue;
          }
          return fail(y, inc.witness, "cl L(y) leaves the set");
        }
      } catch (const UnsupportedClass&) {
        unknown = true;
      }
    }
  }
  if (unknown) return verdict(OVerdict::Inconclusive, "some inclusions are outside the supported class");
  return verdict(OVerdict::HoldsOnGrid);
}

}  // namespace

OPropertyReport check_o_properties(const LevelSetMapping& l, const Vec& y_bar, const OGrid& grid) {
  if (y_bar.size() != l.dim()) throw MalformedInput("reference point dimension mismatch");
  if (grid.depth < 1 || grid.spread < 0) throw MalformedInput("bad property grid");
  OPropertyReport rep;
  rep.grid = grid;
  const SetExpr lbar = l.at(y_bar);
  const SetExpr circ = l_circ(l, y_bar);
  rep.props[0] = check_o1(l, y_bar, circ, grid);
  rep.props[1] = check_o2(y_bar, circ, grid);
  rep.props[2] = lbar.contains(y_bar) ? fail(y_bar, std::nullopt, "ȳ ∈ L(ȳ)") : verdict(OVerdict::Holds);
  rep.props[3] = check_o4(l, y_bar);
  rep.props[4] = check_inclusion(l, y_bar, circ, circ, grid);
  rep.props[5] = check_inclusion(l, y_bar, lbar, lbar, grid);
  return rep;
}

bool verify_o_failure(const LevelSetMapping& l, const Vec& y_bar, int property, const OResult& r) {
  if (!r.fails()) return false;
  const SetExpr circ = l_circ(l, y_bar);
  switch (property) {
    case 1:
    case 2:
      if (r.radius) return distance_below(y_bar, circ, *r.radius).empty();
      return distance(y_bar, circ) > ExtRational(0);
    case 3: return l.at(y_bar).contains(y_bar);
    case 4: return r.y && !l.closure_at(*r.y).contains(*r.y);
    case 5:
      return r.y && r.v && circ.contains(*r.y) && l.closure_at(*r.y).contains(*r.v) && !circ.contains(*r.v);
    case 6: {
      const SetExpr lbar = l.at(y_bar);
      return r.y && r.v && lbar.contains(*r.y) && l.closure_at(*r.y).contains(*r.v) && !lbar.contains(*r.v);
    }
    default: throw MalformedInput("property index must be 1..6");
  }
}

std::vector<HarnessInstance> harness_corpus(std::size_t generated, std::uint32_t seed) {
  std::vector<HarnessInstance> out;
  out.push_back({LevelSetMapping::singleton_map(1), Vec{0}, "singleton"});
  out.push_back({LevelSetMapping::strict_pareto(2, Vec{0, 0}), Vec{0, 0}, "strict-pareto-kill"});
  // Modulo picks keep the sequence identical across standard libraries.
  std::mt19937 rng(seed);
  auto pick = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint32_t>(hi - lo + 1)); };
  for (std::size_t i = 0; i < generated; ++i) {
    const std::string tag = std::to_string(i);
    switch (i % 3) {
      case 0: {
        Interval1D k;
        const long a = pick(0, 3), b = pick(0, 3);
        if (a > 0) k.lo = ExtRational(Rational(-a, pick(1, 4)));
        if (b > 0) k.hi = ExtRational(Rational(b, pick(1, 4)));
        k.lo_closed = a > 0 && pick(0, 1);
        k.hi_closed = b > 0 && pick(0, 1);
        if (a == 0 && pick(0, 2) == 0) {
          k.lo = 0;
          k.lo_closed = true;
        }
        out.push_back({LevelSetMapping::cone_translation(SetExpr::interval(k), Vec{0}), Vec{0}, "interval-" + tag});
        break;
      }
      case 1: {
        HPolyhedron p(2);
        const long rows = pick(1, 3);
        for (long r = 0; r < rows; ++r) {
          const Vec a{Rational(pick(-3, 3)), Rational(pick(-3, 3))};
          const long b = pick(0, 2);
          const bool strict = b > 0 && pick(0, 1);
          if (is_zero(a)) continue;
          p.add({a, strict ? Rel::Lt : Rel::Le, Rational(b)});
        }
        const Vec y_bar{Rational(pick(-2, 2), 4), Rational(pick(-2, 2), 4)};
        out.push_back({LevelSetMapping::cone_translation(SetExpr::polyhedron(p).translate(y_bar), y_bar), y_bar,
                       "polyhedron-" + tag});
        break;
      }
      default: {
        const long shift = pick(0, 3);
        SetExpr special = SetExpr::singleton(Vec{0});
        switch (pick(0, 2)) {
          case 0: break;
          case 1: special = SetExpr::interval(Interval1D::open(-1, 0)); break;
          default: special = SetExpr::interval(Interval1D::closed(Rational(-pick(1, 4), 4), 0)); break;
        }
        const SetExpr shape =
            SetExpr::polyhedron(HPolyhedron(1, {{Vec{1}, pick(0, 1) ? Rel::Lt : Rel::Le, Rational(-shift, 8)}}));
        out.push_back({LevelSetMapping::table_on_grid(Rational(1, 4), shape, {{Vec{0}, special}}), Vec{0},
                       "table-" + tag});
        break;
      }
    }
  }
  return out;
}

HarnessReport implication_harness(const std::vector<HarnessInstance>& instances, const OGrid& grid) {
  HarnessReport rep;
  for (const auto& in : instances) {
    ++rep.instances;
    const auto p = check_o_properties(in.l, in.y_bar, grid);
    auto definite = [&](int i) { return p.o(i).verdict != OVerdict::Inconclusive; };
    auto holds = [&](int i) { return p.o(i).holds(); };
    auto report = [&](const std::string& what) { rep.violations.push_back(in.label + ": " + what); };

    if (definite(1) && definite(2)) {
      ++rep.checks;
      if (holds(1) && !holds(2)) report("O1 holds but O2 fails");
    }
    if (definite(3)) {
      ++rep.checks;
      const SetExpr lbar = in.l.at(in.y_bar);
      const SetExpr circ = l_circ(in.l, in.y_bar);
      const bool equal = included(lbar, circ).included() && included(circ, lbar).included();
      if (holds(3) != equal) report("O3 disagrees with L(ȳ) = L°(ȳ)");
    }
    if (definite(1) && definite(2) && definite(4)) {
      ++rep.checks;
      if (holds(2) && holds(4) && !holds(1)) report("O2 and O4 hold but O1 fails");
    }
    if (definite(2) && definite(3) && definite(4)) {
      ++rep.checks;
      if (holds(3) && holds(4) && !holds(2)) report("O3 and O4 hold but O2 fails");
    }
    if (definite(3) && definite(5) && definite(6)) {
      ++rep.checks;
      if (holds(3) && holds(5) != holds(6)) report("O3 holds but O5 and O6 disagree");
    }
  }
  return rep;
}

BridgeReport bridge_extremal_point(const MappingExpr& F, const SetExpr& omega, const LevelSetMapping& l,
                                   const Vec& x_bar, const Vec& y_bar, const Rational& delta,
                                   const EpsSchedule& schedule, const OGrid& grid) {
  BridgeReport rep;
  rep.props = check_o_properties(l, y_bar, grid);
  if (!rep.props.o(1).holds() || !rep.props.o(5).holds()) {
    rep.status = BridgeReport::Status::HypothesisUnmet;
    rep.reason = "O1 and O5 are not both established";
    return rep;
  }
  rep.point = check_extremal_point(F, omega, l, x_bar, y_bar, rho_grid(schedule.levels.size()));
  if (!rep.point->holds()) {
    rep.status = BridgeReport::Status::Vacuous;
    rep.reason = "the point is not extremal on the grid";
    return rep;
  }
  const auto p = TripleProblem::make(F, omega, xi_delta_family(l, y_bar, delta), x_bar, y_bar);
  rep.triple = check_triple(p, Property::Extremal, schedule);
  if (rep.triple->holds()) {
    rep.status = BridgeReport::Status::Confirmed;
  } else if (rep.triple->refuted()) {
    rep.status = BridgeReport::Status::Violation;
    rep.reason = "extremal point with a non-extremal triple";
  } else {
    rep.status = BridgeReport::Status::Unconfirmed;
    rep.reason = rep.triple->reason;
  }
  return rep;
}

namespace {

// {x : q(x) <= 0} or {x : q(x) < 0} for a polynomial of degree at most two.
IntervalSet sublevel(const UniPoly& q, bool strict) {
  auto ok = [&](const Rational& x) {
    const Rational v = q.eval(x);
    return strict ? v.sign() < 0 : v.sign() <= 0;
  };
  if (q.is_constant()) return ok(0) ? IntervalSet({Interval1D::all()}) : IntervalSet();
  std::vector<Rational> rs;
  for (const auto& r : RealRoot::roots(q)) {
    if (!r.is_rational()) throw NonRationalValue("admissible set has an irrational boundary point");
    rs.push_back(r.value());
  }
  if (rs.empty()) return ok(0) ? IntervalSet({Interval1D::all()}) : IntervalSet();
  std::vector<Interval1D> parts;
  ExtRational lo = ExtRational::neg_inf();
  for (std::size_t k = 0; k <= rs.size(); ++k) {
    const ExtRational hi = k < rs.size() ? ExtRational(rs[k]) : ExtRational::pos_inf();
    const Rational probe = k == 0 ? rs[0] - 1 : (k == rs.size() ? rs.back() + 1 : (rs[k - 1] + rs[k]) / 2);
    if (ok(probe)) parts.push_back(Interval1D::open(lo, hi));
    if (k < rs.size() && ok(rs[k])) parts.push_back(Interval1D::point(rs[k]));
    lo = hi;
  }
  return IntervalSet(parts);
}

IntervalSet epigraphical_condition(const PQFunction& f, const SetExpr& k) {
  const IntervalSet ks = as_interval_set(k);
  if (ks.empty()) return {};
  const Interval1D& top = ks.parts().back();
  if (top.hi.is_pos_inf()) return IntervalSet({Interval1D::all()});
  // [φ(x), inf) meets K iff φ(x) reaches sup K (attained or not).
  const Rational c = top.hi.value();
  IntervalSet out;
  const auto& bs = f.breakpoints();
  for (std::size_t i = 0; i < f.pieces().size(); ++i) {
    Interval1D dom;
    if (i > 0) {
      dom.lo = bs[i - 1];
      dom.lo_closed = true;
    }
    if (i < bs.size()) dom.hi = bs[i];
    const Quadratic& p = f.pieces()[i];
    const IntervalSet s = sublevel({p.a2, p.a1, p.a0 - c}, !top.hi_closed);
    out = out.unite(s.intersect(IntervalSet({dom})));
  }
  return out;
}

}  // namespace

SetExpr admissible_set(const std::vector<MappingExpr>& mappings, const std::vector<SetExpr>& constraints,
                       const SetExpr& omega) {
  if (mappings.size() != constraints.size()) throw MalformedInput("one constraint set per mapping");
  for (std::size_t i = 0; i < mappings.size(); ++i) {
    if (mappings[i].x_dim() != omega.dim() || mappings[i].y_dim() != constraints[i].dim())
      throw MalformedInput("admissible set: dimension mismatch");
  }
  std::vector<SetExpr> conds{omega};
  for (std::size_t i = 0; i < mappings.size(); ++i) {
    const MappingExpr& F = mappings[i];
    if (F.kind() == MappingExpr::Kind::Epigraphical) {
      conds.push_back(from_interval_set(epigraphical_condition(F.function(), constraints[i])));
      continue;
    }
    if (F.kind() == MappingExpr::Kind::PolyhedralGraph) {
      auto g = as_hpolyhedron(F.graph());
      auto k = as_hpolyhedron(constraints[i]);
      if (!g || !k) throw UnsupportedClass("admissible set needs a polyhedral graph and constraint");
      const std::size_t d = F.x_dim(), m = F.y_dim();
      std::vector<std::size_t> ys(m), xs(d);
      for (std::size_t j = 0; j < m; ++j) ys[j] = d + j;
      for (std::size_t j = 0; j < d; ++j) xs[j] = j;
      conds.push_back(SetExpr::polyhedron(fm_project(intersect(*g, k->embed(d + m, ys)), xs)));
      continue;
    }
    throw UnsupportedClass("admissible set for product mappings");
  }
  if (omega.dim() == 1) {
    try {
      IntervalSet acc({Interval1D::all()});
      for (const auto& c : conds) acc = acc.intersect(as_interval_set(c));
      return from_interval_set(acc);
    } catch (const UnsupportedClass&) {
    }
  }
  return meet_polyhedral(conds);
}

}  // namespace vex
