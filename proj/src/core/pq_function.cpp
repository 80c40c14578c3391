#include "vex/core/pq_function.hpp"

#include <algorithm>

#include "vex/core/errors.hpp"

namespace vex {

PQFunction::PQFunction(std::vector<Rational> breakpoints, std::vector<Quadratic> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (pieces_.size() != breakpoints_.size() + 1) {
    throw MalformedInput("piecewise function needs one more piece than breakpoints");
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i])) {
      throw MalformedInput("breakpoints must increase strictly");
    }
    const auto& b = breakpoints_[i];
    if (pieces_[i].eval(b) != pieces_[i + 1].eval(b)) {
      throw MalformedInput("discontinuous at breakpoint " + b.str());
    }
  }
}

std::size_t PQFunction::piece_at(const Rational& x) const {
  return static_cast<std::size_t>(std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                                  breakpoints_.begin());
}

Rational PQFunction::operator()(const Rational& x) const { return pieces_[piece_at(x)].eval(x); }

Rational PQFunction::left_slope(const Rational& x) const {
  // Piece on (x - h, x) for small h: the one covering points just below x.
  const auto i = static_cast<std::size_t>(std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                                          breakpoints_.begin());
  return pieces_[i].slope(x);
}

Rational PQFunction::right_slope(const Rational& x) const { return pieces_[piece_at(x)].slope(x); }

bool PQFunction::is_convex() const {
  for (const auto& p : pieces_) {
    if (p.a2.sign() < 0) return false;
  }
  for (const auto& b : breakpoints_) {
    if (left_slope(b) > right_slope(b)) return false;
  }
  return true;
}

PQFunction PQFunction::translate(const Rational& a, const Rational& b) const {
  std::vector<Rational> bps;
  for (const auto& x : breakpoints_) bps.push_back(x + a);
  std::vector<Quadratic> ps;
  for (const auto& p : pieces_) {
    // a2(x-a)² + a1(x-a) + a0 + b
    ps.push_back({p.a2, p.a1 - Rational(2) * p.a2 * a, p.a2 * a * a - p.a1 * a + p.a0 + b});
  }
  return PQFunction(std::move(bps), std::move(ps));
}

PQFunction PQFunction::scale(const Rational& s) const {
  if (s.sign() <= 0) throw MalformedInput("scale factor must be positive");
  std::vector<Rational> bps;
  for (const auto& x : breakpoints_) bps.push_back(x * s);
  std::vector<Quadratic> ps;
  for (const auto& p : pieces_) ps.push_back({p.a2 / s, p.a1, p.a0 * s});
  return PQFunction(std::move(bps), std::move(ps));
}

}  // namespace vex
