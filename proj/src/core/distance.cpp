#include "vex/core/distance.hpp"

#include <optional>

#include "vex/core/algebraic.hpp"
#include "vex/core/errors.hpp"
#include "vex/core/lp.hpp"

namespace vex {

namespace {

ExtRational poly_distance(const Vec& p, const HPolyhedron& poly) {
  if (!lp_feasible(poly).feasible) return ExtRational::pos_inf();
  // min s over the closure with |x_i - p_i| <= s; variables (x, s).
  const std::size_t n = poly.dim();
  HPolyhedron lp(n + 1);
  const HPolyhedron closed = poly.relaxed();
  for (const auto& r : closed.rows()) {
    Vec a = r.a;
    a.push_back(0);
    lp.add({std::move(a), r.rel, r.b});
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vec up = unit(n + 1, i);
    up[n] = -1;
    lp.add({up, Rel::Le, p[i]});
    Vec down = unit(n + 1, i, -1);
    down[n] = -1;
    lp.add({down, Rel::Le, -p[i]});
  }
  const auto res = lp_optimize(lp, unit(n + 1, n), false);
  if (res.status != LpStatus::Optimal) throw std::logic_error("distance LP not optimal");
  return res.value;
}

ExtRational interval_distance(const Rational& x, const Interval1D& i) {
  if (i.empty()) return ExtRational::pos_inf();
  const ExtRational e(x);
  if (e < i.lo) return i.lo.value() - x;
  if (i.hi < e) return x - i.hi.value();
  return Rational(0);
}

// min over x in [lo, hi] of max(|x - a|, q(x) - b).
struct PieceMin {
  Rational best;
  bool have = false;
};

void epi_piece(const Quadratic& q, const ExtRational& lo, const ExtRational& hi, const Rational& a,
               const Rational& b, PieceMin& out, std::vector<RealRoot>& crossings) {
  auto inside = [&](const Rational& x) { return !(ExtRational(x) < lo) && !(hi < ExtRational(x)); };
  auto g = [&](const Rational& x) { return max((x - a).abs(), q.eval(x) - b); };
  auto offer = [&](const Rational& x) {
    if (!inside(x)) return;
    const Rational v = g(x);
    if (!out.have || v < out.best) {
      out.best = v;
      out.have = true;
    }
  };
  if (lo.is_finite()) offer(lo.value());
  if (hi.is_finite()) offer(hi.value());
  offer(a);
  if (!q.a2.is_zero()) offer(-q.a1 / (Rational(2) * q.a2));
  // q(x) - b = ±(x - a)
  for (int sg : {1, -1}) {
    const UniPoly f{q.a2, q.a1 - Rational(sg), q.a0 - b + Rational(sg) * a};
    if (f.is_constant()) continue;
    for (auto& r : RealRoot::roots(f)) {
      if (r.is_rational()) {
        offer(r.value());
        continue;
      }
      const bool in_lo = !lo.is_finite() || r.compare(lo.value()) >= 0;
      const bool in_hi = !hi.is_finite() || r.compare(hi.value()) <= 0;
      if (in_lo && in_hi) crossings.push_back(r);
    }
  }
}

ExtRational epigraph_distance(const Vec& p, const PQFunction& f) {
  const Rational& a = p[0];
  const Rational& b = p[1];
  if (b >= f(a)) return Rational(0);
  PieceMin m;
  std::vector<RealRoot> crossings;
  const auto& bps = f.breakpoints();
  for (std::size_t i = 0; i < f.pieces().size(); ++i) {
    const ExtRational lo = i == 0 ? ExtRational::neg_inf() : ExtRational(bps[i - 1]);
    const ExtRational hi = i == bps.size() ? ExtRational::pos_inf() : ExtRational(bps[i]);
    epi_piece(f.pieces()[i], lo, hi, a, b, m, crossings);
  }
  // At an irrational crossing g equals |x - a|; it wins iff it lies strictly
  // inside (a - best, a + best).
  for (const auto& r : crossings) {
    if (r.compare(a - m.best) > 0 && r.compare(a + m.best) < 0) {
      throw NonRationalValue("distance to epigraph is irrational");
    }
  }
  return m.best;
}

}  // namespace

ExtRational distance(const Vec& p, const SetExpr& s) {
  if (p.size() != s.dim()) throw MalformedInput("distance: dimension mismatch");
  switch (s.kind()) {
    case SetExpr::Kind::Polyhedron: return poly_distance(p, s.poly());
    case SetExpr::Kind::Union: {
      ExtRational best = ExtRational::pos_inf();
      for (const auto& m : s.members()) {
        const auto d = distance(p, m);
        if (d < best) best = d;
      }
      return best;
    }
    case SetExpr::Kind::Singleton: return norm_inf(sub(p, s.point()));
    case SetExpr::Kind::Interval: return interval_distance(p[0], s.interval());
    case SetExpr::Kind::Epigraph: return epigraph_distance(p, s.function());
    case SetExpr::Kind::Product: {
      ExtRational worst = Rational(0);
      std::size_t at = 0;
      std::optional<ExtRational> inf;
      for (const auto& f : s.members()) {
        const auto d = distance(slice(p, at, f.dim()), f);
        at += f.dim();
        if (d.is_pos_inf()) inf = d;
        else if (worst < d) worst = d;
      }
      return inf ? *inf : worst;
    }
    case SetExpr::Kind::Embedded: {
      Vec q;
      for (auto c : s.coords()) q.push_back(p[c]);
      return distance(q, s.inner());
    }
  }
  return ExtRational::pos_inf();
}

ExtRational distance(const Vec& p, const SetExpr& s, const NormContext& ctx) {
  if (ctx.dim() != s.dim()) throw MalformedInput("distance: norm context dimension mismatch");
  return distance(p, s);
}

}  // namespace vex
