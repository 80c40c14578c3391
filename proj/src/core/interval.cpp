#include "vex/core/interval.hpp"

#include <algorithm>

namespace vex {

Interval1D Interval1D::canonical() const {
  Interval1D r = *this;
  if (!r.lo.is_finite()) r.lo_closed = false;
  if (!r.hi.is_finite()) r.hi_closed = false;
  return r;
}

bool Interval1D::empty() const {
  if (lo.is_pos_inf() || hi.is_neg_inf()) return true;
  if (lo < hi) return false;
  if (lo == hi) return !(lo_closed && hi_closed && lo.is_finite());
  return true;
}

bool Interval1D::contains(const Rational& x) const {
  const ExtRational e(x);
  const bool above = lo_closed ? lo <= e : lo < e;
  const bool below = hi_closed ? e <= hi : e < hi;
  return above && below;
}

Interval1D Interval1D::closure() const {
  if (empty()) return *this;
  Interval1D r = *this;
  r.lo_closed = r.lo.is_finite();
  r.hi_closed = r.hi.is_finite();
  return r;
}

std::string Interval1D::str() const {
  if (empty()) return "{}";
  return std::string(lo_closed ? "[" : "(") + lo.str() + ", " + hi.str() + (hi_closed ? "]" : ")");
}

bool operator==(const Interval1D& a, const Interval1D& b) {
  if (a.empty() && b.empty()) return true;
  const auto x = a.canonical();
  const auto y = b.canonical();
  return x.lo == y.lo && x.hi == y.hi && x.lo_closed == y.lo_closed && x.hi_closed == y.hi_closed;
}

Interval1D intersect(const Interval1D& a, const Interval1D& b) {
  Interval1D r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  return r.canonical();
}

namespace {

// True when a's lower end starts before b's.
bool starts_before(const Interval1D& a, const Interval1D& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.lo_closed && !b.lo_closed;
}

// a ∪ b is an interval given that a starts no later than b.
bool touches(const Interval1D& a, const Interval1D& b) {
  if (b.lo < a.hi) return true;
  if (b.lo == a.hi) return a.hi_closed || b.lo_closed;
  return false;
}

}  // namespace

IntervalSet::IntervalSet(std::vector<Interval1D> parts) {
  std::vector<Interval1D> ps;
  for (auto& p : parts) {
    if (!p.empty()) ps.push_back(p.canonical());
  }
  std::sort(ps.begin(), ps.end(), starts_before);
  for (auto& p : ps) {
    if (!parts_.empty() && touches(parts_.back(), p)) {
      auto& last = parts_.back();
      if (p.hi > last.hi) {
        last.hi = p.hi;
        last.hi_closed = p.hi_closed;
      } else if (p.hi == last.hi) {
        last.hi_closed = last.hi_closed || p.hi_closed;
      }
    } else {
      parts_.push_back(p);
    }
  }
}

bool IntervalSet::contains(const Rational& x) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const Interval1D& i) { return i.contains(x); });
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
  auto all = parts_;
  all.insert(all.end(), o.parts_.begin(), o.parts_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
  std::vector<Interval1D> out;
  for (const auto& a : parts_) {
    for (const auto& b : o.parts_) out.push_back(vex::intersect(a, b));
  }
  return IntervalSet(std::move(out));
}

std::string IntervalSet::str() const {
  if (parts_.empty()) return "{}";
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += " u ";
    s += parts_[i].str();
  }
  return s;
}

}  // namespace vex
