#pragma once

#include <optional>
#include <vector>

#include "vex/core/polyhedron.hpp"
#include "vex/core/rational.hpp"

namespace vex {

/// c2·x² + c1·x + c0
struct UniPoly {
  Rational c2, c1, c0;

  Rational eval(const Rational& x) const { return (c2 * x + c1) * x + c0; }
  bool is_constant() const { return c2.is_zero() && c1.is_zero(); }
};

/// A real root of a polynomial of degree at most two: either rational, or
/// one branch (-p ± √D)/2 of an irreducible monic x² + p·x + q.
class RealRoot {
 public:
  explicit RealRoot(Rational r) : rational_(true), value_(std::move(r)), lo_(value_), hi_(value_) {}

  /// Distinct real roots in increasing order.
  static std::vector<RealRoot> roots(const UniPoly& f);

  bool is_rational() const { return rational_; }
  const Rational& value() const { return value_; }
  const Rational& lower() const { return lo_; }
  const Rational& upper() const { return hi_; }

  /// sign(root - r), exact.
  int compare(const Rational& r) const;
  int compare(const RealRoot& other) const;
  /// sign(g(root)), exact.
  int sign_of(const UniPoly& g) const;
  /// Halves the isolating interval.
  void refine();
  double approx() const;

 private:
  RealRoot(Rational p, Rational q, Rational d, int branch);

  bool rational_ = true;
  Rational value_;
  Rational p_, q_, d_;
  int branch_ = 1;
  Rational lo_, hi_;
};

struct UniCondition {
  UniPoly p;
  Rel rel = Rel::Le;  // p(x) rel 0
};

struct UniDecision {
  bool feasible = false;
  std::optional<Rational> witness;  // set whenever a rational solution exists
};

/// Decides whether some real x satisfies every condition.
UniDecision decide_univariate(const std::vector<UniCondition>& conds);

}  // namespace vex
