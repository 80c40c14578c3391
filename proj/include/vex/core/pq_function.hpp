#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "vex/core/algebraic.hpp"
#include "vex/core/rational.hpp"

namespace vex {

/// One piece x ↦ a2·x² + a1·x + a0.
struct Quadratic {
  Rational a2, a1, a0;

  Rational eval(const Rational& x) const { return (a2 * x + a1) * x + a0; }
  Rational slope(const Rational& x) const { return Rational(2) * a2 * x + a1; }
  UniPoly poly() const { return {a2, a1, a0}; }
  friend bool operator==(const Quadratic&, const Quadratic&) = default;
};

/// Continuous piecewise quadratic function on ℝ. Piece i covers
/// [b_{i-1}, b_i), with b_{-1} = -inf and b_n = +inf.
class PQFunction {
 public:
  PQFunction() : pieces_{Quadratic{}} {}
  /// Throws MalformedInput unless breakpoints increase strictly, the piece
  /// count is one more than the breakpoint count, and adjacent pieces agree
  /// at every breakpoint.
  PQFunction(std::vector<Rational> breakpoints, std::vector<Quadratic> pieces);

  static PQFunction constant(const Rational& c) { return PQFunction({}, {Quadratic{0, 0, c}}); }
  static PQFunction affine(const Rational& slope, const Rational& offset) {
    return PQFunction({}, {Quadratic{0, slope, offset}});
  }

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Quadratic>& pieces() const { return pieces_; }

  std::size_t piece_at(const Rational& x) const;
  Rational operator()(const Rational& x) const;
  Rational left_slope(const Rational& x) const;
  Rational right_slope(const Rational& x) const;
  bool is_convex() const;

  /// ψ(x) = φ(x - a) + b
  PQFunction translate(const Rational& a, const Rational& b) const;
  /// ψ(x) = s·φ(x / s), s > 0
  PQFunction scale(const Rational& s) const;

  friend bool operator==(const PQFunction&, const PQFunction&) = default;

 private:
  std::vector<Rational> breakpoints_;
  std::vector<Quadratic> pieces_;
};

}  // namespace vex
