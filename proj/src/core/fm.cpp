#include "vex/core/fm.hpp"

#include <algorithm>

#include "vex/core/errors.hpp"
#include "vex/core/lp.hpp"

namespace vex {

namespace {

bool row_is_constant(const QRow& r) { return r.q.is_zero() && is_zero(r.a); }

bool constant_holds(const QRow& r) {
  const int s = (-r.b).sign();  // 0 rel b  <=>  -b rel 0
  switch (r.rel) {
    case Rel::Le: return s <= 0;
    case Rel::Lt: return s < 0;
    default: return s == 0;
  }
}

// Scales so the first nonzero coefficient has magnitude one.
void normalize(QRow& r) {
  Rational lead;
  for (const auto& x : r.a) {
    if (!x.is_zero()) {
      lead = x.abs();
      break;
    }
  }
  if (lead.is_zero()) lead = r.q.abs();
  if (lead.is_zero() || lead == Rational(1)) return;
  for (auto& x : r.a) x /= lead;
  r.q /= lead;
  r.b /= lead;
}

bool same_lhs(const QRow& x, const QRow& y) { return x.q == y.q && x.a == y.a; }

// Drops constant rows and keeps, for identical left sides, only the tightest.
void tidy(QSystem& s) {
  std::vector<QRow> out;
  for (auto& r : s.rows) {
    if (row_is_constant(r)) {
      if (!constant_holds(r)) s.contradiction = true;
      continue;
    }
    normalize(r);
    bool merged = false;
    for (auto& o : out) {
      if (!same_lhs(o, r) || o.rel == Rel::Eq || r.rel == Rel::Eq) continue;
      if (r.b < o.b || (r.b == o.b && r.rel == Rel::Lt)) o = r;
      merged = true;
      break;
    }
    if (!merged) out.push_back(std::move(r));
  }
  s.rows = std::move(out);
}

// Removes rows implied by the others; linear systems only.
void prune_redundant(QSystem& s) {
  if (!s.is_linear() || s.rows.size() <= 24) return;
  for (std::size_t i = 0; i < s.rows.size();) {
    const QRow& r = s.rows[i];
    if (r.rel == Rel::Eq) {
      ++i;
      continue;
    }
    HPolyhedron others(s.dim);
    for (std::size_t j = 0; j < s.rows.size(); ++j) {
      if (j != i) others.add({s.rows[j].a, s.rows[j].rel, s.rows[j].b});
    }
    const auto res = lp_optimize(others, r.a, true);
    const bool implied = res.status == LpStatus::Optimal &&
                         (res.value < r.b || (res.value == r.b && r.rel == Rel::Le));
    if (implied) s.rows.erase(s.rows.begin() + static_cast<long>(i));
    else ++i;
  }
}

QRow combine(const QRow& x, const Rational& fx, const QRow& y, const Rational& fy, Rel rel) {
  QRow r;
  r.a = add(scale(x.a, fx), scale(y.a, fy));
  r.q = x.q * fx + y.q * fy;
  r.b = x.b * fx + y.b * fy;
  r.rel = rel;
  return r;
}

}  // namespace

QSystem QSystem::from(const HPolyhedron& p) {
  QSystem s;
  s.dim = p.dim();
  for (const auto& r : p.rows()) s.rows.push_back({r.a, Rational(0), r.rel, r.b});
  return s;
}

bool QSystem::is_linear() const {
  return std::all_of(rows.begin(), rows.end(), [](const QRow& r) { return r.q.is_zero(); });
}

HPolyhedron QSystem::linear_part() const {
  HPolyhedron p(dim);
  for (const auto& r : rows) p.add({r.a, r.rel, r.b});
  return p;
}

QSystem fm_eliminate(const QSystem& s, std::size_t k) {
  if (k >= s.dim) throw MalformedInput("elimination index out of range");
  if (s.qvar && *s.qvar == k) throw UnsupportedClass("cannot eliminate the quadratic coordinate");
  QSystem out;
  out.dim = s.dim;
  out.qvar = s.qvar;
  out.contradiction = s.contradiction;

  const QRow* eq = nullptr;
  for (const auto& r : s.rows) {
    if (r.rel == Rel::Eq && !r.a[k].is_zero()) {
      eq = &r;
      break;
    }
  }
  if (eq) {
    for (const auto& r : s.rows) {
      if (&r == eq) continue;
      if (r.a[k].is_zero()) {
        out.rows.push_back(r);
      } else {
        out.rows.push_back(combine(r, Rational(1), *eq, -r.a[k] / eq->a[k], r.rel));
      }
    }
  } else {
    std::vector<const QRow*> pos, negs;
    for (const auto& r : s.rows) {
      const int sg = r.a[k].sign();
      if (sg == 0) out.rows.push_back(r);
      else if (sg > 0) pos.push_back(&r);
      else negs.push_back(&r);
    }
    for (const QRow* p : pos) {
      for (const QRow* n : negs) {
        const Rel rel = (p->rel == Rel::Lt || n->rel == Rel::Lt) ? Rel::Lt : Rel::Le;
        out.rows.push_back(combine(*p, p->a[k].inverse(), *n, (-n->a[k]).inverse(), rel));
      }
    }
  }
  for (auto& r : out.rows) r.a[k] = 0;
  tidy(out);
  prune_redundant(out);
  return out;
}

HPolyhedron fm_project(const HPolyhedron& p, const std::vector<std::size_t>& keep) {
  QSystem s = QSystem::from(p);
  std::vector<bool> kept(p.dim(), false);
  for (auto k : keep) kept.at(k) = true;
  for (std::size_t k = 0; k < p.dim(); ++k) {
    if (!kept[k]) s = fm_eliminate(s, k);
    if (s.contradiction) break;
  }
  HPolyhedron out(keep.size());
  if (s.contradiction) {
    out.add({zeros(keep.size()), Rel::Lt, 0});
    return out;
  }
  for (const auto& r : s.rows) {
    Vec a;
    for (auto k : keep) a.push_back(r.a[k]);
    out.add({std::move(a), r.rel, r.b});
  }
  return out;
}

}  // namespace vex
