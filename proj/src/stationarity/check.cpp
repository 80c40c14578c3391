#include "vex/stationarity/check.hpp"

#include <algorithm>

#include "vex/core/cells.hpp"
#include "vex/core/errors.hpp"
#include "vex/core/set_ops.hpp"

namespace vex {

std::string property_str(Property p) {
  switch (p) {
    case Property::Extremal: return "extremal";
    case Property::Stationary: return "stationary";
    case Property::ApproxStationary: return "approx-stationary";
    case Property::ExtremalPoint: return "extremal-point";
  }
  return "";
}

Property parse_property(const std::string& s) {
  if (s == "extremal") return Property::Extremal;
  if (s == "stationary") return Property::Stationary;
  if (s == "approx-stationary") return Property::ApproxStationary;
  if (s == "extremal-point") return Property::ExtremalPoint;
  throw MalformedInput("unknown property '" + s + "'");
}

std::string outcome_str(CheckVerdict::Outcome o) {
  switch (o) {
    case CheckVerdict::Outcome::HoldsOnSchedule: return "HoldsOnSchedule";
    case CheckVerdict::Outcome::RefutedOnGrid: return "RefutedOnGrid";
    case CheckVerdict::Outcome::Inconclusive: return "Inconclusive";
  }
  return "";
}

EpsSchedule EpsSchedule::dyadic(int k) {
  if (k < 1) throw MalformedInput("schedule needs at least one level");
  EpsSchedule s;
  for (int j = 1; j <= k; ++j) s.levels.push_back(pow2(-j));
  return s;
}

void EpsSchedule::validate() const {
  if (levels.empty()) throw MalformedInput("empty schedule");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].sign() <= 0) throw MalformedInput("schedule levels must be positive");
    if (i > 0 && !(levels[i] < levels[i - 1])) throw MalformedInput("schedule must be strictly decreasing");
  }
}

std::vector<ExtRational> rho_grid(int depth) {
  std::vector<ExtRational> g{ExtRational::pos_inf()};
  for (int k = depth; k >= -depth; --k) g.emplace_back(pow2(k));
  return g;
}

std::vector<RefutationTemplate> builtin_templates() {
  RefutationTemplate f3;
  f3.name = "tangent-parabola";
  f3.property = Property::Extremal;
  f3.cap = Rational(1);
  f3.c0 = Vec{0, 0};
  f3.c1 = Vec{Rational(3, 4), 0};
  f3.c2 = Vec{0, Rational(-1, 2)};
  f3.e2 = Rational(1, 2);

  RefutationTemplate f4;
  f4.name = "diagonal-descent";
  f4.property = Property::Stationary;
  f4.c0 = Vec{0, 0};
  f4.c1 = Vec{Rational(-3, 4), Rational(-3, 4)};
  f4.eps_star = Rational(1, 2);
  return {f3, f4};
}

namespace {

constexpr int kRhoSteps = 6;
constexpr std::size_t kComboCap = 4096;

SetExpr open_box(const Vec& c, const Rational& r) { return SetExpr::polyhedron(HPolyhedron::box(c, r, true)); }

// Odometer over index tuples, last coordinate fastest. Stops when f returns
// true; returns whether it did.
template <class F>
bool for_each_combo(const std::vector<std::size_t>& sizes, std::size_t cap, F&& f) {
  for (auto s : sizes) {
    if (s == 0) return false;
  }
  std::vector<std::size_t> idx(sizes.size(), 0);
  for (std::size_t seen = 0; seen < cap; ++seen) {
    if (f(idx)) return true;
    std::size_t k = sizes.size();
    while (k > 0) {
      --k;
      if (++idx[k] < sizes[k]) break;
      idx[k] = 0;
      if (k == 0) return false;
    }
    if (sizes.empty()) return false;
  }
  return false;
}

// ∩ sets ∩ B_rho(center), or without the ball for rho = +inf.
DecideResult decide_in_ball(std::vector<SetExpr> sets, const Vec& center, const ExtRational& rho) {
  if (rho.is_finite()) sets.push_back(open_box(center, rho.value()));
  return decide_intersection(sets);
}

struct Search {
  std::optional<WitnessRecord> found;
  bool unsupported = false;
};

Search search_plain(const std::vector<SetFamily>& fams, const Vec& x_bar, const Rational& eps,
                    const ExtRational& rho, const Rational& radius, const SearchConfig& cfg) {
  Search out;
  std::vector<std::vector<FamilyMember>> lists;
  std::vector<std::size_t> sizes;
  for (const auto& f : fams) {
    lists.push_back(f.members_within(x_bar, radius, cfg.budget, cfg.grid_depth));
    sizes.push_back(lists.back().size());
  }
  for_each_combo(sizes, kComboCap, [&](const std::vector<std::size_t>& idx) {
    std::vector<SetExpr> sets;
    for (std::size_t i = 0; i < idx.size(); ++i) sets.push_back(lists[i][idx[i]].set);
    const auto d = decide_in_ball(sets, x_bar, rho);
    if (d.status == Decision::Unsupported) out.unsupported = true;
    if (!d.empty()) return false;
    WitnessRecord w{eps, rho, {}, {}, {}};
    for (std::size_t i = 0; i < idx.size(); ++i) {
      w.params.push_back(lists[i][idx[i]].param);
      w.members.push_back(lists[i][idx[i]].set);
    }
    out.found = std::move(w);
    return true;
  });
  return out;
}

// Shift points for approximate stationarity: x̄ itself, and for a graph given
// as an epigraph, graph points near x̄ at horizontal offsets ±ρ, ±ρ/2.
std::vector<Vec> shift_candidates(const SetFamily& fam, const Vec& x_bar, const Rational& eps, const Rational& rho) {
  std::vector<Vec> out{x_bar};
  if (fam.kind() != SetFamily::Kind::Finite || fam.finite_members().size() != 1) return out;
  const SetExpr& s = fam.finite_members()[0];
  if (s.kind() != SetExpr::Kind::Epigraph) return out;
  for (const Rational c : {Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2)}) {
    const Rational x = x_bar[0] + c * rho;
    Vec p{x, s.function()(x)};
    if (norm_inf(sub(p, x_bar)) < eps) out.push_back(std::move(p));
  }
  return out;
}

Search search_approx(const std::vector<SetFamily>& fams, const Vec& x_bar, const Rational& eps,
                     const Rational& rho, const SearchConfig& cfg) {
  Search out;
  const Vec origin = zeros(x_bar.size());
  std::vector<std::vector<Vec>> shifts;
  std::vector<std::size_t> shift_sizes;
  for (const auto& f : fams) {
    shifts.push_back(shift_candidates(f, x_bar, eps, rho));
    shift_sizes.push_back(shifts.back().size());
  }
  for_each_combo(shift_sizes, kComboCap, [&](const std::vector<std::size_t>& sidx) {
    std::vector<std::vector<FamilyMember>> lists;
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < fams.size(); ++i) {
      lists.push_back(fams[i].members_within(shifts[i][sidx[i]], eps * rho, cfg.budget, cfg.grid_depth));
      sizes.push_back(lists.back().size());
    }
    return for_each_combo(sizes, kComboCap, [&](const std::vector<std::size_t>& idx) {
      std::vector<SetExpr> sets;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        sets.push_back(lists[i][idx[i]].set.translate(neg(shifts[i][sidx[i]])));
      }
      const auto d = decide_in_ball(sets, origin, rho);
      if (d.status == Decision::Unsupported) out.unsupported = true;
      if (!d.empty()) return false;
      WitnessRecord w{eps, rho, {}, {}, {}};
      for (std::size_t i = 0; i < idx.size(); ++i) {
        w.params.push_back(lists[i][idx[i]].param);
        w.members.push_back(lists[i][idx[i]].set);
        w.shifts.push_back(shifts[i][sidx[i]]);
      }
      out.found = std::move(w);
      return true;
    });
  });
  return out;
}

Search search_level(const std::vector<SetFamily>& fams, const Vec& x_bar, Property property, const Rational& eps,
                    const ExtRational& rho_extremal, const SearchConfig& cfg) {
  if (property == Property::Extremal) return search_plain(fams, x_bar, eps, rho_extremal, eps, cfg);
  Search acc;
  for (int k = 1; k <= kRhoSteps; ++k) {
    const Rational rho = eps * pow2(-k);
    Search s = property == Property::Stationary ? search_plain(fams, x_bar, eps, rho, eps * rho, cfg)
                                                : search_approx(fams, x_bar, eps, rho, cfg);
    acc.unsupported = acc.unsupported || s.unsupported;
    if (s.found && verify_witness(fams, x_bar, property, *s.found)) {
      acc.found = std::move(s.found);
      return acc;
    }
  }
  return acc;
}

Vec template_point(const RefutationTemplate& t, const Vec& x_bar, const Rational& r) {
  Vec p = add(x_bar, t.c0);
  if (!t.c1.empty()) p = add(p, scale(t.c1, r));
  if (!t.c2.empty()) p = add(p, scale(t.c2, r * r));
  return p;
}

bool template_fits(const RefutationTemplate& t, std::size_t dim) {
  if (t.c0.size() != dim) return false;
  return (t.c1.empty() || t.c1.size() == dim) && (t.c2.empty() || t.c2.size() == dim);
}

// Evidence for every grid radius, or empty when the template fails anywhere.
std::optional<std::vector<RefutationEvidence>> apply_template(const RefutationTemplate& t,
                                                              const std::vector<SetFamily>& fams,
                                                              const Vec& x_bar, const SearchConfig& cfg) {
  if (!template_fits(t, x_bar.size())) return std::nullopt;
  std::vector<RefutationEvidence> ev;
  if (t.property == Property::Extremal) {
    const auto grid = cfg.rho_only ? std::vector<ExtRational>{*cfg.rho_only} : rho_grid(cfg.grid_depth);
    const bool r_free = (t.c1.empty() || is_zero(t.c1)) && (t.c2.empty() || is_zero(t.c2)) && t.e1.is_zero() &&
                        t.e2.is_zero();
    for (const auto& rho : grid) {
      Rational r;
      if (rho.is_finite()) {
        r = t.cap ? min(rho.value(), *t.cap) : rho.value();
      } else if (t.cap) {
        r = *t.cap;
      } else if (!r_free) {
        return std::nullopt;
      }
      const Rational eps = t.e0 + t.e1 * r + t.e2 * r * r;
      if (eps.sign() <= 0) return std::nullopt;
      RefutationEvidence e{rho, eps, template_point(t, x_bar, r)};
      if (!verify_evidence(fams, x_bar, Property::Extremal, e)) return std::nullopt;
      ev.push_back(std::move(e));
    }
  } else if (t.property == Property::Stationary) {
    if (t.eps_star.sign() <= 0) return std::nullopt;
    for (const auto& rho : rho_grid(cfg.grid_depth)) {
      if (!rho.is_finite() || !(rho.value() < t.eps_star)) continue;
      RefutationEvidence e{rho, t.eps_star, template_point(t, x_bar, rho.value())};
      if (!verify_evidence(fams, x_bar, Property::Stationary, e)) return std::nullopt;
      ev.push_back(std::move(e));
    }
  } else {
    return std::nullopt;
  }
  if (ev.empty()) return std::nullopt;
  return ev;
}

void validate_collection(const std::vector<SetFamily>& fams, const Vec& x_bar) {
  if (fams.size() < 2) throw MalformedInput("a collection needs at least two families");
  for (const auto& f : fams) {
    if (f.dim() != x_bar.size()) throw MalformedInput("family dimension differs from the reference point");
  }
}

}  // namespace

bool verify_evidence(const std::vector<SetFamily>& fams, const Vec& x_bar, Property property,
                     const RefutationEvidence& e) {
  if (e.point.size() != x_bar.size() || e.eps.sign() <= 0) return false;
  if (e.rho.is_finite() && !(norm_inf(sub(e.point, x_bar)) < e.rho.value())) return false;
  Rational radius = e.eps;
  if (property == Property::Stationary) {
    if (!e.rho.is_finite() || !(e.rho.value() < e.eps)) return false;
    radius = e.eps * e.rho.value();
  } else if (property != Property::Extremal) {
    return false;
  }
  for (const auto& f : fams) {
    const auto c = f.all_qualifying_contain(x_bar, radius, e.point);
    if (!c || !*c) return false;
  }
  return true;
}

bool verify_witness(const std::vector<SetFamily>& fams, const Vec& x_bar, Property property,
                    const WitnessRecord& w) {
  const std::size_t n = fams.size();
  if (w.params.size() != n || w.eps.sign() <= 0) return false;
  std::vector<SetExpr> sets;
  for (std::size_t i = 0; i < n; ++i) {
    if (!fams[i].valid_param(w.params[i])) return false;
    sets.push_back(fams[i].realize(w.params[i]));
  }
  switch (property) {
    case Property::Extremal: {
      if (w.rho.is_finite() && w.rho.value().sign() <= 0) return false;
      for (const auto& s : sets) {
        if (!distance_below(x_bar, s, w.eps).nonempty()) return false;
      }
      return decide_in_ball(sets, x_bar, w.rho).empty();
    }
    case Property::Stationary: {
      if (!w.rho.is_finite() || w.rho.value().sign() <= 0 || !(w.rho.value() < w.eps)) return false;
      const Rational bound = w.eps * w.rho.value();
      for (const auto& s : sets) {
        if (!distance_below(x_bar, s, bound).nonempty()) return false;
      }
      return decide_in_ball(sets, x_bar, w.rho).empty();
    }
    case Property::ApproxStationary: {
      if (!w.rho.is_finite() || w.rho.value().sign() <= 0 || !(w.rho.value() < w.eps)) return false;
      if (w.shifts.size() != n) return false;
      const Rational bound = w.eps * w.rho.value();
      std::vector<SetExpr> moved;
      for (std::size_t i = 0; i < n; ++i) {
        if (w.shifts[i].size() != x_bar.size() || !(norm_inf(sub(w.shifts[i], x_bar)) < w.eps)) return false;
        if (!distance_below(w.shifts[i], sets[i], bound).nonempty()) return false;
        moved.push_back(sets[i].translate(neg(w.shifts[i])));
      }
      return decide_in_ball(moved, zeros(x_bar.size()), w.rho).empty();
    }
    case Property::ExtremalPoint: return false;
  }
  return false;
}

CheckVerdict check_collection(const std::vector<SetFamily>& fams, const Vec& x_bar, Property property,
                              const EpsSchedule& schedule, const SearchConfig& cfg) {
  validate_collection(fams, x_bar);
  schedule.validate();
  if (property == Property::ExtremalPoint) throw MalformedInput("extremal-point is not a collection property");
  CheckVerdict v;
  v.property = property;

  std::vector<RefutationTemplate> templates = cfg.templates;
  if (cfg.use_builtin_templates) {
    for (auto& t : builtin_templates()) templates.push_back(std::move(t));
  }
  for (const auto& t : templates) {
    if (t.property != property) continue;
    if (auto ev = apply_template(t, fams, x_bar, cfg)) {
      v.outcome = CheckVerdict::Outcome::RefutedOnGrid;
      v.template_name = t.name;
      v.evidence = std::move(*ev);
      if (property == Property::Stationary) v.eps_star = t.eps_star;
      return v;
    }
  }

  bool unsupported = false;
  if (property == Property::Extremal) {
    const auto grid = cfg.rho_only ? std::vector<ExtRational>{*cfg.rho_only} : rho_grid(cfg.grid_depth);
    for (const auto& rho : grid) {
      std::vector<WitnessRecord> ws;
      for (const auto& eps : schedule.levels) {
        Search s = search_level(fams, x_bar, property, eps, rho, cfg);
        unsupported = unsupported || s.unsupported;
        if (!s.found || !verify_witness(fams, x_bar, property, *s.found)) break;
        ws.push_back(std::move(*s.found));
      }
      if (ws.size() == schedule.levels.size()) {
        v.outcome = CheckVerdict::Outcome::HoldsOnSchedule;
        v.rho = rho;
        v.witnesses = std::move(ws);
        return v;
      }
    }
    v.reason = "no radius on the grid admits witnesses at every level";
  } else {
    for (const auto& eps : schedule.levels) {
      Search s = search_level(fams, x_bar, property, eps, ExtRational::pos_inf(), cfg);
      unsupported = unsupported || s.unsupported;
      if (!s.found) {
        v.reason = "no witness found at eps = " + eps.str();
        break;
      }
      v.witnesses.push_back(std::move(*s.found));
    }
    if (v.witnesses.size() == schedule.levels.size()) {
      v.outcome = CheckVerdict::Outcome::HoldsOnSchedule;
      return v;
    }
    v.witnesses.clear();
  }
  if (unsupported) v.reason += "; some intersections left the supported class";
  return v;
}

TripleProblem TripleProblem::make(MappingExpr F, SetExpr omega, SetFamily family, Vec x_bar, Vec y_bar) {
  if (omega.dim() != F.x_dim() || x_bar.size() != F.x_dim()) throw MalformedInput("triple: x dimension mismatch");
  if (family.dim() != F.y_dim() || y_bar.size() != F.y_dim()) throw MalformedInput("triple: y dimension mismatch");
  if (!omega.contains(x_bar)) throw MalformedInput("reference point x̄ is not in Ω");
  if (!F.in_graph(x_bar, y_bar)) throw MalformedInput("reference point ȳ is not in F(x̄)");
  return TripleProblem{std::move(F), std::move(omega), std::move(family), std::move(x_bar), std::move(y_bar)};
}

std::vector<SetFamily> TripleProblem::pair() const {
  return {SetFamily::finite(F.x_dim() + F.y_dim(), {F.graph()}), product_family(omega, family)};
}

CheckVerdict check_triple(const TripleProblem& p, Property property, const EpsSchedule& schedule,
                          const SearchConfig& cfg) {
  return check_collection(p.pair(), p.ref(), property, schedule, cfg);
}

CheckVerdict check_extremal_point(const MappingExpr& F, const SetExpr& omega, const LevelSetMapping& l,
                                  const Vec& x_bar, const Vec& y_bar, const std::vector<ExtRational>& grid) {
  if (!omega.contains(x_bar)) throw MalformedInput("reference point x̄ is not in Ω");
  if (!F.in_graph(x_bar, y_bar)) throw MalformedInput("reference point ȳ is not in F(x̄)");
  if (l.dim() != F.y_dim()) throw MalformedInput("level-set mapping dimension mismatch");
  CheckVerdict v;
  v.property = Property::ExtremalPoint;
  std::optional<SetExpr> target;
  try {
    target = SetExpr::product({omega, l_circ(l, y_bar)});
  } catch (const UnsupportedClass& e) {
    v.reason = e.what();
    return v;
  }
  const Vec ref = concat(x_bar, y_bar);
  bool unsupported = false;
  for (const auto& rho : grid) {
    const auto d = decide_in_ball({F.graph(), *target}, ref, rho);
    if (d.empty()) {
      v.outcome = CheckVerdict::Outcome::HoldsOnSchedule;
      v.rho = rho;
      v.evidence.clear();
      return v;
    }
    if (d.status == Decision::Unsupported || !d.witness) {
      unsupported = true;
      continue;
    }
    v.evidence.push_back({rho, Rational(0), *d.witness});
  }
  if (!unsupported && !grid.empty()) {
    v.outcome = CheckVerdict::Outcome::RefutedOnGrid;
  } else {
    v.evidence.clear();
    v.reason = "some radii could not be decided";
  }
  return v;
}

MultiProblem MultiProblem::make(std::vector<MappingExpr> mappings, std::vector<SetFamily> families, SetExpr omega,
                                Vec x_bar, std::vector<Vec> y_bars) {
  const std::size_t n = mappings.size();
  if (n == 0 || families.size() != n || y_bars.size() != n) throw MalformedInput("multi problem: arity mismatch");
  if (omega.dim() != x_bar.size()) throw MalformedInput("multi problem: Ω dimension mismatch");
  if (!omega.contains(x_bar)) throw MalformedInput("reference point x̄ is not in Ω");
  for (std::size_t i = 0; i < n; ++i) {
    if (mappings[i].x_dim() != x_bar.size()) throw MalformedInput("multi problem: mapping domain mismatch");
    if (families[i].dim() != mappings[i].y_dim() || y_bars[i].size() != mappings[i].y_dim()) {
      throw MalformedInput("multi problem: range dimension mismatch");
    }
    if (!mappings[i].in_graph(x_bar, y_bars[i])) throw MalformedInput("reference point ȳ_i is not in F_i(x̄)");
  }
  return MultiProblem{std::move(mappings), std::move(families), std::move(omega), std::move(x_bar),
                      std::move(y_bars)};
}

namespace {

// Points (x, w_1, ..., w_n) with x ∈ Ω ∩ B_ρ(x_{n+1}) and, for every i,
// w_i ∈ F_i(x_i + x - x_{n+1}) ∩ (y_i + (A_i - v_i)) ∩ B_ρ(y_i). The covering
// condition holds exactly when this set is empty.
DecideResult decide_lifted(const MultiProblem& p, const Rational& rho, const std::vector<SetExpr>& members,
                           const std::vector<Vec>& xs, const std::vector<Vec>& ys, const std::vector<Vec>& vs) {
  const std::size_t d = p.x_bar.size(), n = p.mappings.size();
  std::size_t total = d;
  for (const auto& m : p.mappings) total += m.y_dim();
  std::vector<std::size_t> xc;
  for (std::size_t j = 0; j < d; ++j) xc.push_back(j);
  std::vector<SetExpr> sets{SetExpr::embedded(p.omega, xc, total),
                            SetExpr::embedded(open_box(xs[n], rho), xc, total)};
  std::size_t at = d;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = p.mappings[i].y_dim();
    std::vector<std::size_t> wc, gc = xc;
    for (std::size_t j = 0; j < m; ++j) wc.push_back(at + j);
    gc.insert(gc.end(), wc.begin(), wc.end());
    const Vec move = concat(sub(xs[n], xs[i]), zeros(m));
    sets.push_back(SetExpr::embedded(p.mappings[i].graph().translate(move), gc, total));
    sets.push_back(SetExpr::embedded(members[i].translate(sub(ys[i], vs[i])), wc, total));
    sets.push_back(SetExpr::embedded(open_box(ys[i], rho), wc, total));
    at += m;
  }
  return decide_intersection(sets);
}

// (x_i, y_i) candidates near (x̄, ȳ_i) on gph F_i.
std::vector<std::pair<Vec, Vec>> graph_shifts(const MappingExpr& F, const Vec& x_bar, const Vec& y_bar,
                                              const Rational& eps, const Rational& rho) {
  std::vector<std::pair<Vec, Vec>> out{{x_bar, y_bar}};
  if (F.kind() != MappingExpr::Kind::Epigraphical) return out;
  for (const Rational c : {Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2)}) {
    const Rational x = x_bar[0] + c * rho;
    const Rational y = F.function()(x);
    if ((y - y_bar[0]).abs() < eps) out.push_back({Vec{x}, Vec{y}});
  }
  return out;
}

}  // namespace

bool verify_multi_witness(const MultiProblem& p, const MultiWitness& w) {
  const std::size_t n = p.mappings.size();
  if (w.params.size() != n || w.xs.size() != n + 1 || w.ys.size() != n || w.vs.size() != n) return false;
  if (w.rho.sign() <= 0 || !(w.rho < w.eps)) return false;
  const Rational bound = w.eps * w.rho;
  for (const auto& x : w.xs) {
    if (x.size() != p.x_bar.size() || !(norm_inf(sub(x, p.x_bar)) < w.eps)) return false;
  }
  if (!distance_below(w.xs[n], p.omega, bound).nonempty()) return false;
  std::vector<SetExpr> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.families[i].valid_param(w.params[i])) return false;
    members.push_back(p.families[i].realize(w.params[i]));
    if (!(norm_inf(sub(w.ys[i], p.y_bars[i])) < w.eps) || !(norm_inf(sub(w.vs[i], p.y_bars[i])) < w.eps)) {
      return false;
    }
    if (!distance_below(concat(w.xs[i], w.ys[i]), p.mappings[i].graph(), bound).nonempty()) return false;
    if (!distance_below(w.vs[i], members[i], bound).nonempty()) return false;
  }
  return decide_lifted(p, w.rho, members, w.xs, w.ys, w.vs).empty();
}

MultiVerdict check_multi(const MultiProblem& p, const EpsSchedule& schedule, const SearchConfig& cfg) {
  schedule.validate();
  const std::size_t n = p.mappings.size();
  MultiVerdict out;
  bool unsupported = false;
  for (const auto& eps : schedule.levels) {
    std::optional<MultiWitness> found;
    for (int k = 1; k <= kRhoSteps && !found; ++k) {
      const Rational rho = eps * pow2(-k);
      std::vector<std::vector<std::pair<Vec, Vec>>> shifts;
      std::vector<std::vector<FamilyMember>> lists;
      std::vector<std::size_t> sizes;
      for (std::size_t i = 0; i < n; ++i) {
        shifts.push_back(graph_shifts(p.mappings[i], p.x_bar, p.y_bars[i], eps, rho));
        lists.push_back(p.families[i].members_within(p.y_bars[i], eps * rho, cfg.multi_member_cap, cfg.grid_depth));
      }
      for (std::size_t i = 0; i < n; ++i) sizes.push_back(shifts[i].size());
      for (std::size_t i = 0; i < n; ++i) sizes.push_back(lists[i].size());
      for_each_combo(sizes, kComboCap, [&](const std::vector<std::size_t>& idx) {
        MultiWitness w{eps, rho, {}, {}, {}, {}, {}};
        for (std::size_t i = 0; i < n; ++i) {
          w.xs.push_back(shifts[i][idx[i]].first);
          w.ys.push_back(shifts[i][idx[i]].second);
          w.vs.push_back(p.y_bars[i]);
          w.params.push_back(lists[i][idx[n + i]].param);
          w.members.push_back(lists[i][idx[n + i]].set);
        }
        w.xs.push_back(p.x_bar);
        const auto d = decide_lifted(p, rho, w.members, w.xs, w.ys, w.vs);
        if (d.status == Decision::Unsupported) unsupported = true;
        if (!d.empty() || !verify_multi_witness(p, w)) return false;
        found = std::move(w);
        return true;
      });
    }
    if (!found) {
      out.reason = "no witness found at eps = " + eps.str();
      if (unsupported) out.reason += "; some lifted sets left the supported class";
      out.witnesses.clear();
      return out;
    }
    out.witnesses.push_back(std::move(*found));
  }
  out.outcome = CheckVerdict::Outcome::HoldsOnSchedule;
  return out;
}

std::optional<WitnessRecord> extremal_to_stationary(const std::vector<SetFamily>& fams, const Vec& x_bar,
                                                    const ExtRational& rho0, const Rational& eps,
                                                    const SearchConfig& cfg) {
  Rational rho = eps / 2;
  if (rho0.is_finite()) rho = min(rho, rho0.value());
  Search s = search_plain(fams, x_bar, eps, rho, eps * rho, cfg);
  if (!s.found || !verify_witness(fams, x_bar, Property::Stationary, *s.found)) return std::nullopt;
  return s.found;
}

WitnessRecord stationary_to_approx(const WitnessRecord& w, const Vec& x_bar) {
  WitnessRecord out = w;
  out.shifts.assign(w.params.size(), x_bar);
  return out;
}

}  // namespace vex
