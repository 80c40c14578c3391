#include "vex/core/algebraic.hpp"

#include <algorithm>

#include "vex/core/errors.hpp"

namespace vex {

namespace {

std::optional<Rational> rational_sqrt(const Rational& d) {
  if (d.sign() < 0) return std::nullopt;
  const mpz_class n = d.num();
  const mpz_class m = d.den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(m.get_mpz_t())) return std::nullopt;
  mpz_class rn, rm;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rm.get_mpz_t(), m.get_mpz_t());
  return Rational(mpq_class(rn, rm));
}

bool holds(int sign, Rel rel) {
  switch (rel) {
    case Rel::Le: return sign <= 0;
    case Rel::Lt: return sign < 0;
    default: return sign == 0;
  }
}

}  // namespace

RealRoot::RealRoot(Rational p, Rational q, Rational d, int branch)
    : rational_(false), p_(std::move(p)), q_(std::move(q)), d_(std::move(d)), branch_(branch) {
  const Rational v = -p_ / Rational(2);
  const Rational b = d_ / Rational(4) + Rational(1);
  if (branch_ > 0) {
    lo_ = v;
    hi_ = v + b;
  } else {
    lo_ = v - b;
    hi_ = v;
  }
}

std::vector<RealRoot> RealRoot::roots(const UniPoly& f) {
  if (f.c2.is_zero()) {
    if (f.c1.is_zero()) return {};
    return {RealRoot(-f.c0 / f.c1)};
  }
  const Rational p = f.c1 / f.c2;
  const Rational q = f.c0 / f.c2;
  const Rational d = p * p - Rational(4) * q;
  if (d.sign() < 0) return {};
  if (d.is_zero()) return {RealRoot(-p / Rational(2))};
  if (auto s = rational_sqrt(d)) {
    return {RealRoot((-p - *s) / Rational(2)), RealRoot((-p + *s) / Rational(2))};
  }
  return {RealRoot(p, q, d, -1), RealRoot(p, q, d, 1)};
}

int RealRoot::compare(const Rational& r) const {
  if (rational_) return (value_ <=> r) < 0 ? -1 : (value_ == r ? 0 : 1);
  // root - r = (s·√D - w)/2 with w = p + 2r; √D is irrational so never zero.
  const Rational w = p_ + Rational(2) * r;
  const bool d_above = d_ > w * w;
  if (branch_ > 0) return (w.sign() < 0 || d_above) ? 1 : -1;
  return (w.sign() < 0 && !d_above) ? 1 : -1;
}

int RealRoot::compare(const RealRoot& other) const {
  if (other.rational_) return compare(other.value_);
  if (rational_) return -other.compare(value_);
  if (p_ == other.p_ && q_ == other.q_) {
    return branch_ == other.branch_ ? 0 : (branch_ < other.branch_ ? -1 : 1);
  }
  // Distinct irreducible minimal polynomials: the roots differ.
  RealRoot a = *this;
  RealRoot b = other;
  for (;;) {
    if (a.hi_ < b.lo_) return -1;
    if (b.hi_ < a.lo_) return 1;
    a.refine();
    b.refine();
  }
}

int RealRoot::sign_of(const UniPoly& g) const {
  if (rational_) return g.eval(value_).sign();
  const Rational e1 = g.c1 - g.c2 * p_;
  const Rational e0 = g.c0 - g.c2 * q_;
  if (e1.is_zero()) return e0.sign();
  return e1.sign() * compare(-e0 / e1);
}

void RealRoot::refine() {
  if (rational_) return;
  const Rational mid = (lo_ + hi_) / Rational(2);
  if (compare(mid) > 0) lo_ = mid;
  else hi_ = mid;
}

double RealRoot::approx() const {
  if (rational_) return value_.to_double();
  RealRoot r = *this;
  for (int i = 0; i < 64; ++i) r.refine();
  return ((r.lo_ + r.hi_) / Rational(2)).to_double();
}

UniDecision decide_univariate(const std::vector<UniCondition>& conds) {
  std::vector<RealRoot> all;
  for (const auto& c : conds) {
    if (c.p.is_constant()) {
      if (!holds(c.p.c0.sign(), c.rel)) return {};
      continue;
    }
    for (auto& r : RealRoot::roots(c.p)) all.push_back(std::move(r));
  }
  std::sort(all.begin(), all.end(), [](const RealRoot& a, const RealRoot& b) { return a.compare(b) < 0; });
  std::vector<RealRoot> roots;
  for (auto& r : all) {
    if (roots.empty() || roots.back().compare(r) != 0) roots.push_back(std::move(r));
  }

  auto ok_rational = [&](const Rational& x) {
    for (const auto& c : conds) {
      if (!holds(c.p.eval(x).sign(), c.rel)) return false;
    }
    return true;
  };
  auto ok_root = [&](const RealRoot& r) {
    for (const auto& c : conds) {
      if (!holds(r.sign_of(c.p), c.rel)) return false;
    }
    return true;
  };

  if (roots.empty()) {
    if (ok_rational(Rational(0))) return {true, Rational(0)};
    return {};
  }
  bool irrational_hit = false;
  auto check_root = [&](const RealRoot& r) -> std::optional<UniDecision> {
    if (!ok_root(r)) return std::nullopt;
    if (r.is_rational()) return UniDecision{true, r.value()};
    irrational_hit = true;
    return std::nullopt;
  };

  if (auto x = roots.front().lower() - Rational(1); ok_rational(x)) return {true, x};
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (auto d = check_root(roots[i])) return *d;
    if (i + 1 < roots.size()) {
      RealRoot a = roots[i];
      RealRoot b = roots[i + 1];
      while (!(a.upper() < b.lower())) {
        a.refine();
        b.refine();
      }
      const Rational mid = (a.upper() + b.lower()) / Rational(2);
      if (ok_rational(mid)) return {true, mid};
    }
  }
  if (auto x = roots.back().upper() + Rational(1); ok_rational(x)) return {true, x};
  if (irrational_hit) return {true, std::nullopt};
  return {};
}

}  // namespace vex
