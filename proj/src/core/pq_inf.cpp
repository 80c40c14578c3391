#include "vex/core/pq_inf.hpp"

#include "vex/core/errors.hpp"

namespace vex {

namespace {

// Piece i as the closed interval [lo, hi] with infinite ends allowed.
Interval1D piece_span(const PQFunction& f, std::size_t i) {
  const auto& bps = f.breakpoints();
  Interval1D s;
  if (i > 0) {
    s.lo = bps[i - 1];
    s.lo_closed = true;
  }
  if (i < bps.size()) {
    s.hi = bps[i];
    s.hi_closed = true;
  }
  return s;
}

// A point strictly inside a nonempty, non-degenerate interval.
Rational interior_point(const Interval1D& i) {
  if (i.lo.is_finite() && i.hi.is_finite()) return (i.lo.value() + i.hi.value()) / Rational(2);
  if (i.lo.is_finite()) return i.lo.value() + Rational(1);
  if (i.hi.is_finite()) return i.hi.value() - Rational(1);
  return Rational(0);
}

}  // namespace

InfResult pq_inf(const PQFunction& f, const Interval1D& window) {
  if (window.empty()) throw MalformedInput("infimum over an empty window");
  bool have = false;
  Rational best;
  bool attained = false;
  auto offer = [&](const Rational& v, bool att) {
    if (!have || v < best) {
      best = v;
      attained = att;
      have = true;
    } else if (v == best) {
      attained = attained || att;
    }
  };
  for (std::size_t i = 0; i < f.pieces().size(); ++i) {
    const Interval1D sub = intersect(window, piece_span(f, i));
    if (sub.empty()) continue;
    const Quadratic& q = f.pieces()[i];
    // Unbounded directions.
    if (!sub.lo.is_finite() && (q.a2.sign() < 0 || (q.a2.is_zero() && q.a1.sign() > 0))) {
      return {ExtRational::neg_inf(), false};
    }
    if (!sub.hi.is_finite() && (q.a2.sign() < 0 || (q.a2.is_zero() && q.a1.sign() < 0))) {
      return {ExtRational::neg_inf(), false};
    }
    if (sub.lo.is_finite()) offer(q.eval(sub.lo.value()), window.contains(sub.lo.value()));
    if (sub.hi.is_finite()) offer(q.eval(sub.hi.value()), window.contains(sub.hi.value()));
    if (sub.lo == sub.hi) continue;
    offer(q.eval(interior_point(sub)), true);
    if (!q.a2.is_zero()) {
      const Rational c = -q.a1 / (Rational(2) * q.a2);
      const Interval1D open{sub.lo, false, sub.hi, false};
      if (open.contains(c)) offer(q.eval(c), true);
    }
  }
  return {ExtRational(best), attained};
}

SupResult pq_sup(const PQFunction& f, const Interval1D& window) {
  std::vector<Quadratic> neg;
  for (const auto& q : f.pieces()) neg.push_back({-q.a2, -q.a1, -q.a0});
  const auto r = pq_inf(PQFunction(f.breakpoints(), std::move(neg)), window);
  return {-r.value, r.attained};
}

}  // namespace vex
