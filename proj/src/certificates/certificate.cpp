#include "vex/certificates/certificate.hpp"

#include <algorithm>
#include <functional>

#include "vex/core/errors.hpp"
#include "vex/core/lp.hpp"
#include "vex/core/set_ops.hpp"

namespace vex {

std::string cert_kind_str(DualCertificate::Kind k) {
  switch (k) {
    case DualCertificate::Kind::FuzzySeparation: return "separation";
    case DualCertificate::Kind::MultiplierRule: return "multiplier";
    case DualCertificate::Kind::Singular: return "singular";
  }
  return "";
}

DualCertificate::Kind parse_cert_kind(const std::string& s) {
  if (s == "separation") return DualCertificate::Kind::FuzzySeparation;
  if (s == "multiplier") return DualCertificate::Kind::MultiplierRule;
  if (s == "singular") return DualCertificate::Kind::Singular;
  throw MalformedInput("unknown certificate kind '" + s + "'");
}

std::string qc_status_str(QCReport::Status s) {
  switch (s) {
    case QCReport::Status::HoldsWithEps: return "HoldsWithEps";
    case QCReport::Status::ViolatedBy: return "ViolatedBy";
    case QCReport::Status::Inconclusive: return "Inconclusive";
  }
  return "";
}

std::string qc_sufficient_str(QCReport::Sufficient s) {
  switch (s) {
    case QCReport::Sufficient::None: return "none";
    case QCReport::Sufficient::InteriorPoint: return "interior-point";
    case QCReport::Sufficient::AubinProperty: return "aubin-property";
  }
  return "";
}

bool AubinReport::audit_ok() const {
  return std::all_of(audit.begin(), audit.end(), [](const AubinAudit& a) { return a.ok; });
}

MultiProblem as_multi(const TripleProblem& p) {
  return MultiProblem::make({p.F}, {p.family}, p.omega, p.x_bar, {p.y_bar});
}

namespace {

// ---- clause bookkeeping -------------------------------------------------

struct Clauses {
  std::vector<std::string> failed;
  std::vector<std::string> unknown;

  void check(bool ok, const std::string& name) {
    if (!ok) failed.push_back(name);
  }
  // Runs a clause that may hit an unsupported cone class.
  void guarded(const std::string& name, const std::function<bool()>& f) {
    try {
      check(f(), name);
    } catch (const UnsupportedClass&) {
      unknown.push_back(name);
    }
  }
  CertReport report() const {
    CertReport r;
    if (!failed.empty()) {
      r.status = CertReport::Status::Rejected;
      r.failures = failed;
    } else if (!unknown.empty()) {
      r.status = CertReport::Status::Inconclusive;
      r.failures = unknown;
    } else {
      r.status = CertReport::Status::Accepted;
    }
    return r;
  }
};

std::string at(const std::string& name, std::size_t i) { return name + "[" + std::to_string(i) + "]"; }

bool in_ball(const Vec& p, const Vec& c, const Rational& r) { return norm_inf(sub(p, c)) < r; }

// ---- small LP builder ---------------------------------------------------

struct Term {
  std::size_t var;
  Rational coef;
};

struct LinExpr {
  std::vector<Term> terms;
  Rational constant;
};

class Lp {
 public:
  std::size_t vars(std::size_t k) {
    const std::size_t s = n_;
    n_ += k;
    return s;
  }
  void row(std::vector<Term> t, Rel rel, Rational b) { rows_.push_back({std::move(t), rel, std::move(b)}); }

  // (e_0, ..., e_{k-1}) ∈ C, with each coordinate an affine expression.
  void in_cone(const FGCone& c, const std::vector<LinExpr>& coords) {
    for (const auto& r : h_rows_of(c)) {
      std::vector<Term> t;
      Rational b;
      for (std::size_t j = 0; j < r.size(); ++j) {
        if (r[j].is_zero()) continue;
        for (const auto& tm : coords[j].terms) t.push_back({tm.var, r[j] * tm.coef});
        b -= r[j] * coords[j].constant;
      }
      row(std::move(t), Rel::Le, b);
    }
  }

  // Σ |e_k| rel bound, through auxiliary variables.
  void l1(const std::vector<LinExpr>& es, Rel rel, const Rational& bound) {
    const std::size_t u = vars(es.size());
    std::vector<Term> sum;
    for (std::size_t k = 0; k < es.size(); ++k) {
      std::vector<Term> pos = es[k].terms, negt;
      for (const auto& tm : es[k].terms) negt.push_back({tm.var, -tm.coef});
      pos.push_back({u + k, -1});
      negt.push_back({u + k, -1});
      row(std::move(pos), Rel::Le, -es[k].constant);
      row(std::move(negt), Rel::Le, es[k].constant);
      sum.push_back({u + k, 1});
    }
    row(std::move(sum), rel, bound);
  }

  std::optional<Vec> solve() const {
    HPolyhedron h(n_);
    for (const auto& r : rows_) {
      Vec a = zeros(n_);
      for (const auto& tm : r.t) a[tm.var] += tm.coef;
      h.add({std::move(a), r.rel, r.b});
    }
    auto f = lp_feasible(h);
    if (!f.feasible) return std::nullopt;
    return f.witness;
  }

 private:
  struct Row {
    std::vector<Term> t;
    Rel rel;
    Rational b;
  };
  std::size_t n_ = 0;
  std::vector<Row> rows_;
};

LinExpr var(std::size_t v, const Rational& c = 1) { return {{{v, c}}, 0}; }
LinExpr konst(const Rational& c) { return {{}, c}; }

std::vector<LinExpr> block(std::size_t start, std::size_t k, const Rational& c = 1) {
  std::vector<LinExpr> out;
  for (std::size_t j = 0; j < k; ++j) out.push_back(var(start + j, c));
  return out;
}

Vec read(const Vec& sol, std::size_t start, std::size_t k) { return slice(sol, start, k); }

// Signs a coordinate of a cone element may take: +1, -1, both, or none.
std::vector<int> sign_options(const FGCone& c, std::size_t j) {
  bool pos = false, neg = false;
  for (const auto& l : c.lineality) {
    if (!l[j].is_zero()) pos = neg = true;
  }
  for (const auto& g : c.generators) {
    if (g[j].sign() > 0) pos = true;
    if (g[j].sign() < 0) neg = true;
  }
  std::vector<int> out;
  if (pos) out.push_back(1);
  if (neg) out.push_back(-1);
  return out;
}

struct SignedVar {
  std::size_t var;
  std::vector<int> signs;
};

// Tries every orthant pattern making Σ |v| = 1 linear. `base` adds the
// remaining constraints to a fresh LP and returns it.
std::optional<Vec> solve_normalized(const std::function<Lp()>& base, const std::vector<SignedVar>& vs) {
  std::vector<SignedVar> active;
  for (const auto& v : vs) {
    if (!v.signs.empty()) active.push_back(v);
  }
  if (active.empty()) return std::nullopt;
  std::vector<std::size_t> idx(active.size(), 0);
  while (true) {
    Lp lp = base();
    std::vector<Term> sum;
    for (std::size_t k = 0; k < active.size(); ++k) {
      const int s = active[k].signs[idx[k]];
      lp.row({{active[k].var, Rational(-s)}}, Rel::Le, 0);
      sum.push_back({active[k].var, Rational(s)});
    }
    lp.row(std::move(sum), Rel::Eq, 1);
    if (auto sol = lp.solve()) return sol;
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == active[k].signs.size()) idx[k++] = 0;
    if (k == idx.size()) return std::nullopt;
  }
}

// ---- candidate base points ---------------------------------------------

struct Candidate {
  Vec point;
  Rational dist;
};

void sort_unique(std::vector<Candidate>& cs) {
  std::sort(cs.begin(), cs.end(), [](const Candidate& a, const Candidate& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    return a.point < b.point;
  });
  cs.erase(std::unique(cs.begin(), cs.end(), [](const Candidate& a, const Candidate& b) { return a.point == b.point; }),
           cs.end());
}

void push_if(std::vector<Candidate>& out, const SetExpr& s, const Vec& p, const Vec& c, const Rational& r) {
  const Rational d = norm_inf(sub(p, c));
  if (d < r && s.contains(p)) out.push_back({p, d});
}

std::vector<Candidate> candidate_points(const SetExpr& s, const Vec& c, const Rational& r, std::size_t cap,
                                        int depth);

std::vector<Candidate> poly_candidates(const SetExpr& s, const HPolyhedron& P, const Vec& c, const Rational& r) {
  std::vector<Candidate> out;
  push_if(out, s, c, c, r);
  const std::size_t n = P.dim();
  // Nearest point of a face (sup norm) by LP over (p, s); falls back to any
  // point of the face inside the open ball when strict rows interfere.
  auto face_point = [&](const std::vector<std::size_t>& tight) {
    HPolyhedron face(n);
    for (std::size_t j = 0; j < P.rows().size(); ++j) {
      LinearRow row = P.rows()[j];
      if (std::find(tight.begin(), tight.end(), j) != tight.end()) {
        if (row.rel == Rel::Lt) return;
        row.rel = Rel::Eq;
      }
      face.add(row);
    }
    std::vector<std::size_t> coords(n);
    for (std::size_t j = 0; j < n; ++j) coords[j] = j;
    HPolyhedron lifted = face.embed(n + 1, coords);
    for (std::size_t j = 0; j < n; ++j) {
      Vec a = zeros(n + 1);
      a[j] = 1;
      a[n] = -1;
      lifted.add({a, Rel::Le, c[j]});
      a[j] = -1;
      lifted.add({a, Rel::Le, -c[j]});
    }
    const auto res = lp_optimize(lifted, unit(n + 1, n), false);
    if (res.status == LpStatus::Optimal) {
      const Vec p = slice(res.x, 0, n);
      if (s.contains(p) && norm_inf(sub(p, c)) < r) {
        out.push_back({p, norm_inf(sub(p, c))});
        return;
      }
    }
    const auto f = lp_feasible(intersect(face, HPolyhedron::box(c, r, true)));
    if (f.feasible) push_if(out, s, f.witness, c, r);
  };
  face_point({});
  const std::size_t m = P.rows().size();
  for (std::size_t j = 0; j < m; ++j) face_point({j});
  if (n >= 2) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) face_point({j, k});
    }
  }
  return out;
}

std::vector<Candidate> epigraph_candidates(const SetExpr& s, const Vec& c, const Rational& r, int depth) {
  std::vector<Candidate> out;
  push_if(out, s, c, c, r);
  const PQFunction& f = s.function();
  std::vector<Rational> xs{c[0], c[0] + r * Rational(3, 4), c[0] - r * Rational(3, 4)};
  for (int j = 1; j <= depth; ++j) {
    xs.push_back(c[0] + r * pow2(-j));
    xs.push_back(c[0] - r * pow2(-j));
  }
  for (const auto& b : f.breakpoints()) {
    if ((b - c[0]).abs() < r) xs.push_back(b);
  }
  for (const auto& x : xs) push_if(out, s, Vec{x, f(x)}, c, r);
  return out;
}

std::vector<Candidate> candidate_points(const SetExpr& s, const Vec& c, const Rational& r, std::size_t cap,
                                        int depth) {
  std::vector<Candidate> out;
  switch (s.kind()) {
    case SetExpr::Kind::Singleton: push_if(out, s, s.point(), c, r); break;
    case SetExpr::Kind::Polyhedron: out = poly_candidates(s, s.poly(), c, r); break;
    case SetExpr::Kind::Interval: out = poly_candidates(s, interval_rows(s.interval()), c, r); break;
    case SetExpr::Kind::Epigraph: out = epigraph_candidates(s, c, r, depth); break;
    case SetExpr::Kind::Union:
      for (const auto& m : s.members()) {
        for (auto& q : candidate_points(m, c, r, cap, depth)) push_if(out, s, q.point, c, r);
      }
      break;
    case SetExpr::Kind::Product: {
      std::vector<std::vector<Candidate>> parts;
      std::size_t off = 0;
      for (const auto& f : s.members()) {
        parts.push_back(candidate_points(f, slice(c, off, f.dim()), r, cap, depth));
        off += f.dim();
        if (parts.back().empty()) return {};
      }
      std::vector<std::size_t> idx(parts.size(), 0);
      while (true) {
        Vec p;
        for (std::size_t k = 0; k < parts.size(); ++k) p = concat(p, parts[k][idx[k]].point);
        push_if(out, s, p, c, r);
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == parts[k].size()) idx[k++] = 0;
        if (k == idx.size() || out.size() >= 4 * cap) break;
      }
      break;
    }
    case SetExpr::Kind::Embedded: {
      const auto& co = s.coords();
      Vec ic(co.size());
      for (std::size_t j = 0; j < co.size(); ++j) ic[j] = c[co[j]];
      for (const auto& q : candidate_points(s.inner(), ic, r, cap, depth)) {
        Vec p = c;
        for (std::size_t j = 0; j < co.size(); ++j) p[co[j]] = q.point[j];
        push_if(out, s, p, c, r);
      }
      break;
    }
  }
  sort_unique(out);
  if (out.size() > cap) out.resize(cap);
  return out;
}

std::optional<FGCone> try_normal(const SetExpr& s, const Vec& x, ConeFlavor flavor) {
  try {
    auto nc = normal_cone(s, x, flavor);
    if (!nc.in_set) return std::nullopt;
    return nc.cone;
  } catch (const UnsupportedClass&) {
    return std::nullopt;
  }
}

// Index tuples over lists of the given sizes, ordered by the largest
// distance used and then lexicographically.
std::vector<std::vector<std::size_t>> ordered_combos(const std::vector<std::vector<Rational>>& dists,
                                                     std::size_t cap) {
  std::vector<std::pair<Rational, std::vector<std::size_t>>> all;
  for (const auto& d : dists) {
    if (d.empty()) return {};
  }
  std::vector<std::size_t> idx(dists.size(), 0);
  while (all.size() < cap) {
    Rational m;
    for (std::size_t k = 0; k < idx.size(); ++k) m = max(m, dists[k][idx[k]]);
    all.push_back({m, idx});
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == dists[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  std::vector<std::vector<std::size_t>> out;
  for (auto& a : all) out.push_back(std::move(a.second));
  return out;
}

constexpr std::size_t kComboCap = 4096;

// One base point of a family member with its normal cone.
struct Entry {
  MemberParam param;
  SetExpr set;
  Vec point;
  Rational dist;
  FGCone cone;
};

std::vector<Entry> family_entries(const SetFamily& fam, const Vec& center, const Rational& eps, ConeFlavor flavor,
                                  const CertSearchConfig& cfg) {
  std::vector<Entry> out;
  for (const auto& m : fam.members_within(center, eps, cfg.members, cfg.grid_depth)) {
    for (const auto& c : candidate_points(m.set, center, eps, cfg.base_points, cfg.grid_depth)) {
      if (auto cone = try_normal(m.set, c.point, flavor)) out.push_back({m.param, m.set, c.point, c.dist, *cone});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    return a.point < b.point;
  });
  return out;
}

struct GraphEntry {
  Vec point;
  Rational dist;
  FGCone cone;
};

std::vector<GraphEntry> set_entries(const SetExpr& s, const Vec& center, const Rational& eps, ConeFlavor flavor,
                                    std::size_t cap, int depth) {
  std::vector<GraphEntry> out;
  for (const auto& c : candidate_points(s, center, eps, cap, depth)) {
    if (auto cone = try_normal(s, c.point, flavor)) out.push_back({c.point, c.dist, *cone});
  }
  return out;
}

template <class T>
std::vector<Rational> dists_of(const std::vector<T>& es) {
  std::vector<Rational> d;
  for (const auto& e : es) d.push_back(e.dist);
  return d;
}

// ---- fuzzy separation -------------------------------------------------

std::optional<std::vector<Vec>> separate(const std::vector<const FGCone*>& cones, std::size_t dim,
                                         const Rational& eps) {
  if (std::all_of(cones.begin(), cones.end(), [](const FGCone* c) { return c->is_zero(); })) return std::nullopt;
  std::vector<SignedVar> vs;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    for (std::size_t j = 0; j < dim; ++j) vs.push_back({i * dim + j, sign_options(*cones[i], j)});
  }
  auto base = [&]() {
    Lp lp;
    lp.vars(cones.size() * dim);
    for (std::size_t i = 0; i < cones.size(); ++i) lp.in_cone(*cones[i], block(i * dim, dim));
    std::vector<LinExpr> sum(dim);
    for (std::size_t i = 0; i < cones.size(); ++i) {
      for (std::size_t j = 0; j < dim; ++j) sum[j].terms.push_back({i * dim + j, 1});
    }
    lp.l1(sum, Rel::Lt, eps);
    return lp;
  };
  auto sol = solve_normalized(base, vs);
  if (!sol) return std::nullopt;
  std::vector<Vec> out;
  for (std::size_t i = 0; i < cones.size(); ++i) out.push_back(read(*sol, i * dim, dim));
  return out;
}

std::optional<DualCertificate> search_fuzzy(const std::vector<SetFamily>& fams, const Vec& x_bar,
                                            const Rational& eps, ConeFlavor flavor, const CertSearchConfig& cfg) {
  std::vector<std::vector<Entry>> lists;
  std::vector<std::vector<Rational>> dists;
  for (const auto& f : fams) {
    lists.push_back(family_entries(f, x_bar, eps, flavor, cfg));
    dists.push_back(dists_of(lists.back()));
  }
  for (const auto& idx : ordered_combos(dists, kComboCap)) {
    std::vector<const FGCone*> cones;
    for (std::size_t i = 0; i < idx.size(); ++i) cones.push_back(&lists[i][idx[i]].cone);
    auto zs = separate(cones, x_bar.size(), eps);
    if (!zs) continue;
    DualCertificate cert;
    cert.kind = DualCertificate::Kind::FuzzySeparation;
    cert.eps = eps;
    cert.flavor = flavor;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const Entry& e = lists[i][idx[i]];
      cert.tuples.push_back({"family", i, e.param, e.point, (*zs)[i]});
    }
    if (verify_fuzzy_separation(cert, fams, x_bar).accepted()) return cert;
  }
  return std::nullopt;
}

// ---- multiplier rule ----------------------------------------------------

struct MultiplierData {
  std::vector<Vec> x_stars;  // n graph covectors, then Ω's
  std::vector<Vec> y_stars;
  std::vector<Vec> y2_stars;
};

// Decides the multiplier clauses for fixed base points. Any of the covector
// groups may be pinned to given values.
std::optional<MultiplierData> solve_multiplier(const MultiProblem& p, const std::vector<FGCone>& graph_cones,
                                               const FGCone& omega_cone, const std::vector<FGCone>& member_cones,
                                               const Rational& eps, const Rational& M,
                                               const std::vector<Vec>* fixed_y = nullptr) {
  const std::size_t n = p.mappings.size();
  const std::size_t d = p.x_bar.size();
  std::vector<std::size_t> ms;
  for (const auto& y : p.y_bars) ms.push_back(y.size());

  // Layout: x_i* (n·d), x_{n+1}* (d), y_i*, y2_i*.
  std::size_t total_m = 0;
  for (auto m : ms) total_m += m;
  const std::size_t xs = 0, xo = n * d, ys = xo + d, y2 = ys + total_m;
  std::vector<std::size_t> yoff(n);
  for (std::size_t i = 0, o = 0; i < n; o += ms[i], ++i) yoff[i] = o;

  auto y_expr = [&](std::size_t i, std::size_t j) {
    if (fixed_y) return konst((*fixed_y)[i][j]);
    return var(ys + yoff[i] + j);
  };

  auto base = [&]() {
    Lp lp;
    lp.vars(y2 + total_m);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<LinExpr> coords = block(xs + i * d, d);
      for (std::size_t j = 0; j < ms[i]; ++j) {
        LinExpr e = y_expr(i, j);
        for (auto& t : e.terms) t.coef = -t.coef;
        e.constant = -e.constant;
        coords.push_back(e);
      }
      lp.in_cone(graph_cones[i], coords);
      lp.in_cone(member_cones[i], block(y2 + yoff[i], ms[i]));
      std::vector<LinExpr> diff;
      for (std::size_t j = 0; j < ms[i]; ++j) {
        LinExpr e = y_expr(i, j);
        e.terms.push_back({y2 + yoff[i] + j, -1});
        diff.push_back(e);
      }
      lp.l1(diff, Rel::Lt, eps);
    }
    lp.in_cone(omega_cone, block(xo, d));
    lp.l1(block(xo, d), Rel::Lt, M);
    std::vector<LinExpr> sum(d);
    for (std::size_t k = 0; k <= n; ++k) {
      for (std::size_t j = 0; j < d; ++j) sum[j].terms.push_back({k * d + j, 1});
    }
    lp.l1(sum, Rel::Lt, eps);
    return lp;
  };

  std::optional<Vec> sol;
  if (fixed_y) {
    sol = base().solve();
  } else {
    std::vector<SignedVar> vs;
    for (std::size_t k = 0; k < total_m; ++k) vs.push_back({ys + k, {1, -1}});
    sol = solve_normalized(base, vs);
  }
  if (!sol) return std::nullopt;
  MultiplierData out;
  for (std::size_t k = 0; k <= n; ++k) out.x_stars.push_back(read(*sol, k * d, d));
  for (std::size_t i = 0; i < n; ++i) {
    out.y_stars.push_back(fixed_y ? (*fixed_y)[i] : read(*sol, ys + yoff[i], ms[i]));
    out.y2_stars.push_back(read(*sol, y2 + yoff[i], ms[i]));
  }
  return out;
}

// Graph, Ω and member entries for a multi problem, in combination order.
struct MultiLists {
  std::vector<std::vector<GraphEntry>> graphs;
  std::vector<GraphEntry> omega;
  std::vector<std::vector<Entry>> members;
};

MultiLists multi_lists(const MultiProblem& p, const Rational& eps, ConeFlavor flavor, const CertSearchConfig& cfg,
                       bool with_members) {
  MultiLists L;
  for (std::size_t i = 0; i < p.mappings.size(); ++i) {
    L.graphs.push_back(set_entries(p.mappings[i].graph(), concat(p.x_bar, p.y_bars[i]), eps, flavor, cfg.base_points,
                                   cfg.grid_depth));
  }
  L.omega = set_entries(p.omega, p.x_bar, eps, flavor, cfg.base_points, cfg.grid_depth);
  if (with_members) {
    for (std::size_t i = 0; i < p.families.size(); ++i) {
      L.members.push_back(family_entries(p.families[i], p.y_bars[i], eps, flavor, cfg));
    }
  }
  return L;
}

std::optional<DualCertificate> search_multiplier(const MultiProblem& p, const Rational& eps, ConeFlavor flavor,
                                                 const CertSearchConfig& cfg) {
  const std::size_t n = p.mappings.size();
  const MultiLists L = multi_lists(p, eps, flavor, cfg, true);
  std::vector<std::vector<Rational>> dists;
  for (const auto& g : L.graphs) dists.push_back(dists_of(g));
  dists.push_back(dists_of(L.omega));
  for (const auto& m : L.members) dists.push_back(dists_of(m));
  const Rational m_max = pow2(cfg.m_max_exp);

  for (const auto& idx : ordered_combos(dists, kComboCap)) {
    std::vector<FGCone> gc, mc;
    for (std::size_t i = 0; i < n; ++i) gc.push_back(L.graphs[i][idx[i]].cone);
    const FGCone& oc = L.omega[idx[n]].cone;
    for (std::size_t i = 0; i < n; ++i) mc.push_back(L.members[i][idx[n + 1 + i]].cone);
    if (!solve_multiplier(p, gc, oc, mc, eps, m_max)) continue;
    for (int k = 0; k <= cfg.m_max_exp; ++k) {
      const Rational M = pow2(k);
      auto data = solve_multiplier(p, gc, oc, mc, eps, M);
      if (!data) continue;
      DualCertificate cert;
      cert.kind = DualCertificate::Kind::MultiplierRule;
      cert.eps = eps;
      cert.flavor = flavor;
      cert.M = M;
      cert.y_stars = data->y_stars;
      for (std::size_t i = 0; i < n; ++i) {
        cert.tuples.push_back({"graph", i, std::nullopt, L.graphs[i][idx[i]].point, data->x_stars[i]});
      }
      cert.tuples.push_back({"omega", 0, std::nullopt, L.omega[idx[n]].point, data->x_stars[n]});
      for (std::size_t i = 0; i < n; ++i) {
        const Entry& e = L.members[i][idx[n + 1 + i]];
        cert.tuples.push_back({"member", i, e.param, e.point, data->y2_stars[i]});
      }
      if (verify_multiplier_rule(cert, p).accepted()) return cert;
      break;
    }
  }
  return std::nullopt;
}

// ---- singular alternative ---------------------------------------------

std::optional<std::vector<Vec>> solve_singular(const MultiProblem& p, const std::vector<const FGCone*>& gc,
                                               const FGCone& oc, const Rational& eps) {
  const std::size_t n = p.mappings.size();
  const std::size_t d = p.x_bar.size();
  // Layout: per mapping (x_i*, w_i) of size d + m_i, then x_{n+1}*.
  std::vector<std::size_t> off(n + 1);
  std::size_t o = 0;
  for (std::size_t i = 0; i < n; ++i) {
    off[i] = o;
    o += d + p.y_bars[i].size();
  }
  off[n] = o;
  const std::size_t total = o + d;
  std::vector<SignedVar> vs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) vs.push_back({off[i] + j, sign_options(*gc[i], j)});
  }
  for (std::size_t j = 0; j < d; ++j) vs.push_back({off[n] + j, sign_options(oc, j)});
  auto base = [&]() {
    Lp lp;
    lp.vars(total);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t m = p.y_bars[i].size();
      lp.in_cone(*gc[i], block(off[i], d + m));
      lp.l1(block(off[i] + d, m), Rel::Lt, eps);
    }
    lp.in_cone(oc, block(off[n], d));
    std::vector<LinExpr> sum(d);
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j < d; ++j) sum[j].terms.push_back({off[i] + j, 1});
    }
    lp.l1(sum, Rel::Lt, eps);
    return lp;
  };
  auto sol = solve_normalized(base, vs);
  if (!sol) return std::nullopt;
  std::vector<Vec> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(read(*sol, off[i], d + p.y_bars[i].size()));
  out.push_back(read(*sol, off[n], d));
  return out;
}

DualCertificate singular_cert(const MultiLists& L, const std::vector<std::size_t>& idx, const std::vector<Vec>& cov,
                              const Rational& eps, ConeFlavor flavor) {
  const std::size_t n = L.graphs.size();
  DualCertificate cert;
  cert.kind = DualCertificate::Kind::Singular;
  cert.eps = eps;
  cert.flavor = flavor;
  for (std::size_t i = 0; i < n; ++i) cert.tuples.push_back({"graph", i, std::nullopt, L.graphs[i][idx[i]].point, cov[i]});
  cert.tuples.push_back({"omega", 0, std::nullopt, L.omega[idx[n]].point, cov[n]});
  return cert;
}

// Σ over the x-blocks of graph covectors plus Ω's covector.
Vec x_sum(const std::vector<Vec>& xs) {
  Vec s = zeros(xs.front().size());
  for (const auto& x : xs) s = add(s, x);
  return s;
}

}  // namespace

// ---- verification -------------------------------------------------------

CertReport verify_fuzzy_separation(const DualCertificate& cert, const std::vector<SetFamily>& fams,
                                   const Vec& x_bar) {
  Clauses cl;
  bool shape = cert.kind == DualCertificate::Kind::FuzzySeparation && cert.eps.sign() > 0 &&
               cert.tuples.size() == fams.size();
  for (std::size_t i = 0; shape && i < cert.tuples.size(); ++i) {
    const auto& t = cert.tuples[i];
    shape = t.role == "family" && t.index == i && t.param && fams[i].valid_param(*t.param) &&
            t.point.size() == x_bar.size() && t.covector.size() == x_bar.size();
  }
  if (!shape) {
    cl.check(false, "shape");
    return cl.report();
  }
  Vec sum = zeros(x_bar.size());
  Rational total;
  for (std::size_t i = 0; i < cert.tuples.size(); ++i) {
    const auto& t = cert.tuples[i];
    const SetExpr set = fams[i].realize(*t.param);
    const bool in_set = set.contains(t.point);
    cl.check(in_set, at("point-in-set", i));
    cl.check(in_ball(t.point, x_bar, cert.eps), at("point-in-ball", i));
    if (in_set) {
      cl.guarded(at("normal-cone", i), [&] {
        const auto nc = normal_cone(set, t.point, cert.flavor);
        return nc.in_set && cone_member(nc.cone, t.covector);
      });
    }
    sum = add(sum, t.covector);
    total += norm_1(t.covector);
  }
  cl.check(norm_1(sum) < cert.eps, "sum");
  cl.check(total == 1, "normalization");
  return cl.report();
}

namespace {

struct MultiTuples {
  std::vector<const CertTuple*> graph, member;
  const CertTuple* omega = nullptr;
};

// Sorts tuples into roles; empty optional when the layout does not match.
std::optional<MultiTuples> layout(const DualCertificate& cert, const MultiProblem& p, bool members) {
  const std::size_t n = p.mappings.size();
  const std::size_t d = p.x_bar.size();
  MultiTuples mt;
  mt.graph.assign(n, nullptr);
  mt.member.assign(n, nullptr);
  for (const auto& t : cert.tuples) {
    if (t.role == "graph" && t.index < n && !mt.graph[t.index]) {
      if (t.point.size() != d + p.y_bars[t.index].size()) return std::nullopt;
      mt.graph[t.index] = &t;
    } else if (t.role == "omega" && t.index == 0 && !mt.omega) {
      if (t.point.size() != d || !(t.covector.empty() || t.covector.size() == d)) return std::nullopt;
      mt.omega = &t;
    } else if (members && t.role == "member" && t.index < n && !mt.member[t.index]) {
      const std::size_t m = p.y_bars[t.index].size();
      if (!t.param || !p.families[t.index].valid_param(*t.param) || t.point.size() != m ||
          !(t.covector.empty() || t.covector.size() == m))
        return std::nullopt;
      mt.member[t.index] = &t;
    } else {
      return std::nullopt;
    }
  }
  if (!mt.omega) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i) {
    if (!mt.graph[i] || (members && !mt.member[i])) return std::nullopt;
  }
  return mt;
}

}  // namespace

CertReport verify_multiplier_rule(const DualCertificate& cert, const MultiProblem& p) {
  Clauses cl;
  const std::size_t n = p.mappings.size();
  const std::size_t d = p.x_bar.size();
  auto mt = layout(cert, p, true);
  bool shape = mt && cert.kind == DualCertificate::Kind::MultiplierRule && cert.eps.sign() > 0 &&
               cert.M.sign() > 0 && cert.y_stars.size() == n;
  for (std::size_t i = 0; shape && i < n; ++i) {
    shape = cert.y_stars[i].size() == p.y_bars[i].size() &&
            (mt->graph[i]->covector.empty() || mt->graph[i]->covector.size() == d);
  }
  if (!shape) {
    cl.check(false, "shape");
    return cl.report();
  }

  Rational ynorm;
  for (const auto& y : cert.y_stars) ynorm += norm_1(y);
  cl.check(ynorm == 1, "y-norm");

  // Memberships and balls.
  std::vector<bool> placed(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& g = *mt->graph[i];
    const bool in = p.mappings[i].graph().contains(g.point);
    placed[i] = in;
    cl.check(in, at("graph-point", i));
    cl.check(in_ball(g.point, concat(p.x_bar, p.y_bars[i]), cert.eps), at("graph-ball", i));
  }
  const bool omega_in = p.omega.contains(mt->omega->point);
  cl.check(omega_in, "omega-point");
  cl.check(in_ball(mt->omega->point, p.x_bar, cert.eps), "omega-ball");
  std::vector<SetExpr> member_sets;
  std::vector<bool> member_in(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& m = *mt->member[i];
    member_sets.push_back(p.families[i].realize(*m.param));
    member_in[i] = member_sets[i].contains(m.point);
    cl.check(member_in[i], at("member-point", i));
    cl.check(in_ball(m.point, p.y_bars[i], cert.eps), at("member-ball", i));
  }

  // y_i* ∈ N_{A_i}(v_i) + εB.
  for (std::size_t i = 0; i < n; ++i) {
    if (!member_in[i]) continue;
    const auto& m = *mt->member[i];
    cl.guarded(at("member-normal", i), [&] {
      const auto nc = normal_cone(member_sets[i], m.point, cert.flavor);
      if (!m.covector.empty()) return cone_member(nc.cone, m.covector) && norm_1(sub(cert.y_stars[i], m.covector)) < cert.eps;
      const std::size_t k = m.point.size();
      Lp lp;
      lp.vars(k);
      lp.in_cone(nc.cone, block(0, k));
      std::vector<LinExpr> diff;
      for (std::size_t j = 0; j < k; ++j) diff.push_back({{{j, -1}}, cert.y_stars[i][j]});
      lp.l1(diff, Rel::Lt, cert.eps);
      return lp.solve().has_value();
    });
  }

  // 0 ∈ Σ D*F_i(x_i, y_i)(y_i*) + N_Ω(x_{n+1}) ∩ M·B + εB
  if (!omega_in || std::find(placed.begin(), placed.end(), false) != placed.end()) return cl.report();
  bool all_given = !mt->omega->covector.empty();
  for (std::size_t i = 0; i < n; ++i) all_given = all_given && !mt->graph[i]->covector.empty();
  cl.guarded("inclusion", [&] {
    std::vector<FGCone> gc;
    for (std::size_t i = 0; i < n; ++i) {
      gc.push_back(normal_cone(p.mappings[i].graph(), mt->graph[i]->point, cert.flavor).cone);
    }
    const FGCone oc = normal_cone(p.omega, mt->omega->point, cert.flavor).cone;
    if (all_given) {
      std::vector<Vec> xs;
      for (std::size_t i = 0; i < n; ++i) {
        if (!cone_member(gc[i], concat(mt->graph[i]->covector, neg(cert.y_stars[i])))) return false;
        xs.push_back(mt->graph[i]->covector);
      }
      const Vec& xo = mt->omega->covector;
      xs.push_back(xo);
      return cone_member(oc, xo) && norm_1(xo) < cert.M && norm_1(x_sum(xs)) < cert.eps;
    }
    // Some covectors are left open: one LP, pinning the recorded ones.
    Lp lp;
    const std::size_t xo = lp.vars((n + 1) * d) + n * d;
    auto pin = [&](std::size_t start, const Vec& v) {
      for (std::size_t j = 0; j < v.size(); ++j) lp.row({{start + j, 1}}, Rel::Eq, v[j]);
    };
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<LinExpr> coords = block(i * d, d);
      for (const auto& y : cert.y_stars[i]) coords.push_back(konst(-y));
      lp.in_cone(gc[i], coords);
      if (!mt->graph[i]->covector.empty()) pin(i * d, mt->graph[i]->covector);
    }
    lp.in_cone(oc, block(xo, d));
    if (!mt->omega->covector.empty()) pin(xo, mt->omega->covector);
    lp.l1(block(xo, d), Rel::Lt, cert.M);
    std::vector<LinExpr> sum(d);
    for (std::size_t k = 0; k <= n; ++k) {
      for (std::size_t j = 0; j < d; ++j) sum[j].terms.push_back({k * d + j, 1});
    }
    lp.l1(sum, Rel::Lt, cert.eps);
    return lp.solve().has_value();
  });
  return cl.report();
}

CertReport verify_singular(const DualCertificate& cert, const MultiProblem& p) {
  Clauses cl;
  const std::size_t n = p.mappings.size();
  const std::size_t d = p.x_bar.size();
  auto mt = layout(cert, p, false);
  bool shape = mt && cert.kind == DualCertificate::Kind::Singular && cert.eps.sign() > 0 &&
               mt->omega->covector.size() == d;
  for (std::size_t i = 0; shape && i < n; ++i) shape = mt->graph[i]->covector.size() == d + p.y_bars[i].size();
  if (!shape) {
    cl.check(false, "shape");
    return cl.report();
  }
  std::vector<Vec> xs;
  Rational total;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& g = *mt->graph[i];
    const SetExpr& gr = p.mappings[i].graph();
    const bool in = gr.contains(g.point);
    cl.check(in, at("graph-point", i));
    cl.check(in_ball(g.point, concat(p.x_bar, p.y_bars[i]), cert.eps), at("graph-ball", i));
    if (in) {
      cl.guarded(at("graph-normal", i), [&] { return cone_member(normal_cone(gr, g.point, cert.flavor).cone, g.covector); });
    }
    cl.check(norm_1(slice(g.covector, d, p.y_bars[i].size())) < cert.eps, at("y-small", i));
    xs.push_back(slice(g.covector, 0, d));
    total += norm_1(xs.back());
  }
  const auto& o = *mt->omega;
  const bool in = p.omega.contains(o.point);
  cl.check(in, "omega-point");
  cl.check(in_ball(o.point, p.x_bar, cert.eps), "omega-ball");
  if (in) cl.guarded("omega-normal", [&] { return cone_member(normal_cone(p.omega, o.point, cert.flavor).cone, o.covector); });
  xs.push_back(o.covector);
  total += norm_1(o.covector);
  cl.check(norm_1(x_sum(xs)) < cert.eps, "sum");
  cl.check(total == 1, "normalization");
  return cl.report();
}

// ---- search ---------------------------------------------------------------

std::optional<DualCertificate> search_certificates(const TripleProblem& p, const Rational& eps,
                                                   DualCertificate::Kind kind, ConeFlavor flavor,
                                                   const CertSearchConfig& cfg) {
  if (eps.sign() <= 0) throw MalformedInput("certificate search needs eps > 0");
  switch (kind) {
    case DualCertificate::Kind::FuzzySeparation: return search_fuzzy(p.pair(), p.ref(), eps, flavor, cfg);
    case DualCertificate::Kind::MultiplierRule: return search_multiplier(as_multi(p), eps, flavor, cfg);
    case DualCertificate::Kind::Singular: return search_singular(as_multi(p), eps, flavor, cfg);
  }
  return std::nullopt;
}

std::optional<DualCertificate> search_singular(const MultiProblem& p, const Rational& eps, ConeFlavor flavor,
                                               const CertSearchConfig& cfg) {
  if (eps.sign() <= 0) throw MalformedInput("certificate search needs eps > 0");
  const std::size_t n = p.mappings.size();
  const MultiLists L = multi_lists(p, eps, flavor, cfg, false);
  std::vector<std::vector<Rational>> dists;
  for (const auto& g : L.graphs) dists.push_back(dists_of(g));
  dists.push_back(dists_of(L.omega));
  for (const auto& idx : ordered_combos(dists, kComboCap)) {
    std::vector<const FGCone*> gc;
    for (std::size_t i = 0; i < n; ++i) gc.push_back(&L.graphs[i][idx[i]].cone);
    auto cov = solve_singular(p, gc, L.omega[idx[n]].cone, eps);
    if (!cov) continue;
    DualCertificate cert = singular_cert(L, idx, *cov, eps, flavor);
    if (verify_singular(cert, p).accepted()) return cert;
  }
  return std::nullopt;
}

AdversarialResult adversarial_singular_search(const MultiProblem& p, const std::vector<Rational>& levels,
                                              ConeFlavor flavor, std::size_t budget) {
  AdversarialResult res;
  CertSearchConfig cfg;
  cfg.base_points = 64;
  const std::size_t n = p.mappings.size();
  for (const auto& eps : levels) {
    const MultiLists L = multi_lists(p, eps, flavor, cfg, false);
    std::vector<std::vector<Rational>> dists;
    for (const auto& g : L.graphs) dists.push_back(dists_of(g));
    dists.push_back(dists_of(L.omega));
    for (const auto& idx : ordered_combos(dists, budget - res.tuples_tried)) {
      if (res.tuples_tried >= budget) return res;
      ++res.tuples_tried;
      std::vector<const FGCone*> gc;
      for (std::size_t i = 0; i < n; ++i) gc.push_back(&L.graphs[i][idx[i]].cone);
      auto cov = solve_singular(p, gc, L.omega[idx[n]].cone, eps);
      if (!cov) continue;
      DualCertificate cert = singular_cert(L, idx, *cov, eps, flavor);
      if (verify_singular(cert, p).accepted()) {
        res.found = cert;
        return res;
      }
    }
    if (res.tuples_tried >= budget) break;
  }
  return res;
}

// ---- Aubin property ---------------------------------------------------------

namespace {

// y = A x + b from a graph given by exactly y_dim independent equations
// that can be solved for y.
std::optional<Matrix> affine_solution(const MappingExpr& F) {
  auto poly = as_hpolyhedron(F.graph());
  if (!poly) return std::nullopt;
  const std::size_t d = F.x_dim(), m = F.y_dim();
  Matrix rows;
  for (const auto& r : poly->rows()) {
    if (r.rel != Rel::Eq) return std::nullopt;
    // Reorder to (y, x, b) so pivots land on y first.
    Vec row = slice(r.a, d, m);
    row = concat(row, slice(r.a, 0, d));
    row.push_back(r.b);
    rows.push_back(row);
  }
  if (rows.size() < m) return std::nullopt;
  const auto piv = rref(rows, m + d);
  if (piv.size() != m) return std::nullopt;
  for (std::size_t i = 0; i < m; ++i) {
    if (piv[i] != i) return std::nullopt;
  }
  // Row i: y_i + C'_i x = b'_i.
  Matrix out;
  for (std::size_t i = 0; i < m; ++i) {
    Vec a;
    for (std::size_t j = 0; j < d; ++j) a.push_back(-rows[i][m + j]);
    a.push_back(rows[i][m + d]);
    out.push_back(a);
  }
  return out;
}

void audit_cone(AubinReport& rep, const Vec& pt, ConeFlavor flavor, const FGCone& c, std::size_t d,
                const Rational& tau) {
  auto one = [&](const Vec& g) {
    AubinAudit a;
    a.point = pt;
    a.flavor = flavor;
    a.normal = g;
    a.lhs = norm_1(slice(g, 0, d));
    a.rhs = tau * norm_1(slice(g, d, g.size() - d));
    a.ok = a.lhs <= a.rhs;
    rep.audit.push_back(std::move(a));
  };
  for (const auto& g : c.generators) one(g);
  for (const auto& l : c.lineality) {
    one(l);
    one(neg(l));
  }
}

}  // namespace

AubinReport aubin_estimate(const MappingExpr& F, const Vec& x_bar, const Vec& y_bar, const Rational& delta) {
  if (delta.sign() <= 0) throw MalformedInput("aubin estimate needs delta > 0");
  if (x_bar.size() != F.x_dim() || y_bar.size() != F.y_dim()) throw MalformedInput("reference point dimension mismatch");
  AubinReport rep;
  rep.delta = delta;
  std::vector<Vec> audit_points;

  if (F.kind() == MappingExpr::Kind::Epigraphical) {
    const PQFunction& f = F.function();
    const Rational lo = x_bar[0] - delta, hi = x_bar[0] + delta;
    // Slopes are affine on each piece, so the extremes sit at the ends of
    // each piece's overlap with the window.
    std::vector<Rational> cuts{lo};
    for (const auto& b : f.breakpoints()) {
      if (lo < b && b < hi) cuts.push_back(b);
    }
    cuts.push_back(hi);
    Rational tau;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const Quadratic& q = f.pieces()[f.piece_at((cuts[k] + cuts[k + 1]) / 2)];
      tau = max(tau, max(q.slope(cuts[k]).abs(), q.slope(cuts[k + 1]).abs()));
    }
    rep.tau_upper = tau;
    Rational prev_x = lo, prev_y = f(lo);
    for (int j = -31; j <= 32; ++j) {
      const Rational x = x_bar[0] + delta * Rational(j, 32);
      const Rational y = f(x);
      rep.tau_lower = max(rep.tau_lower, ((y - prev_y) / (x - prev_x)).abs());
      prev_x = x;
      prev_y = y;
    }
    for (int j = -24; j <= 25; ++j) {
      const Rational x = x_bar[0] + delta * Rational(j, 26);
      audit_points.push_back(Vec{x, f(x)});
    }
  } else if (F.kind() == MappingExpr::Kind::PolyhedralGraph) {
    auto aff = affine_solution(F);
    if (!aff) {
      rep.note = "graph is not the graph of an affine map; no modulus certified";
      return rep;
    }
    const std::size_t d = F.x_dim();
    Rational tau;
    for (const auto& row : *aff) tau = max(tau, norm_1(slice(row, 0, d)));
    rep.tau_upper = tau;
    rep.tau_lower = tau;  // attained along the steepest row's sign vector
    Vec dir = zeros(d);
    std::size_t best = 0;
    for (std::size_t i = 0; i < aff->size(); ++i) {
      if (norm_1(slice((*aff)[i], 0, d)) == tau) best = i;
    }
    for (std::size_t j = 0; j < d; ++j) dir[j] = Rational((*aff)[best][j].sign() >= 0 ? 1 : -1);
    for (int j = -24; j <= 25; ++j) {
      const Vec x = add(x_bar, scale(dir, delta * Rational(j, 26)));
      Vec y;
      for (const auto& row : *aff) y.push_back(dot(slice(row, 0, d), x) + row[d]);
      audit_points.push_back(concat(x, y));
    }
  } else {
    rep.note = "product mappings are not estimated; estimate each factor";
    return rep;
  }

  for (const auto& pt : audit_points) {
    for (ConeFlavor fl : {ConeFlavor::Frechet, ConeFlavor::Clarke}) {
      const auto nc = normal_cone(F.graph(), pt, fl);
      audit_cone(rep, pt, fl, nc.cone, F.x_dim(), *rep.tau_upper);
    }
  }
  return rep;
}

// ---- qualification condition ------------------------------------------------

QCReport check_qc(const MultiProblem& p, ConeFlavor flavor, const std::vector<Rational>& eps_grid,
                  const Rational& aubin_delta) {
  QCReport rep;
  rep.flavor = flavor;
  const std::size_t n = p.mappings.size();

  // x̄ ∈ int Ω; only enough for one mapping, since with two the graph parts
  // can cancel each other.
  if (n == 1) {
    if (auto poly = as_hpolyhedron(p.omega)) {
      std::optional<Rational> r;
      bool interior = true;
      for (const auto& row : poly->rows()) {
        if (is_zero(row.a)) continue;
        if (row.rel == Rel::Eq) {
          interior = false;
          break;
        }
        const Rational slack = (row.b - dot(row.a, p.x_bar)) / norm_1(row.a);
        r = r ? min(*r, slack) : slack;
      }
      if (interior && (!r || r->sign() > 0)) {
        rep.status = QCReport::Status::HoldsWithEps;
        rep.sufficient = QCReport::Sufficient::InteriorPoint;
        rep.eps = (r ? min(*r, Rational(1)) : Rational(1)) / 2;
        rep.reason = "x_bar is an interior point of omega";
        return rep;
      }
    }
  }

  // Aubin property of every F_i: ‖x_i*‖ ≤ τ‖y_i*‖ < τε, so the sum stays
  // at least 1 - 2nτε.
  std::optional<Rational> tau = Rational(0);
  for (std::size_t i = 0; i < n && tau; ++i) {
    try {
      const auto a = aubin_estimate(p.mappings[i], p.x_bar, p.y_bars[i], aubin_delta);
      if (a.tau_upper && a.audit_ok()) {
        tau = max(*tau, *a.tau_upper);
      } else {
        tau.reset();
      }
    } catch (const Error&) {
      tau.reset();
    }
  }
  if (tau) {
    rep.status = QCReport::Status::HoldsWithEps;
    rep.sufficient = QCReport::Sufficient::AubinProperty;
    rep.eps = min(Rational(1) / (Rational(2 * static_cast<long>(n)) * *tau + 1), aubin_delta);
    rep.reason = "Aubin property with modulus " + tau->str();
    return rep;
  }

  // A violating tuple at a level also violates at every larger level, so the
  // finest level decides the grid.
  if (eps_grid.empty()) {
    rep.reason = "no sufficient condition applies and the grid is empty";
    return rep;
  }
  const Rational finest = *std::min_element(eps_grid.begin(), eps_grid.end());
  if (auto cert = search_singular(p, finest, flavor)) {
    rep.status = QCReport::Status::ViolatedBy;
    rep.eps = finest;
    rep.violation = std::move(cert);
    rep.reason = "singular tuple at the finest grid level";
    return rep;
  }
  rep.reason = "no sufficient condition applies and no violating tuple was found";
  return rep;
}

}  // namespace vex
