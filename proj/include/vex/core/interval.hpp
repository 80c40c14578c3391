#pragma once

#include <string>
#include <vector>

#include "vex/core/rational.hpp"

namespace vex {

/// Interval of ℝ with possibly infinite, open or closed ends. Infinite ends
/// are always open.
struct Interval1D {
  ExtRational lo = ExtRational::neg_inf();
  bool lo_closed = false;
  ExtRational hi = ExtRational::pos_inf();
  bool hi_closed = false;

  static Interval1D all() { return {}; }
  static Interval1D closed(const Rational& a, const Rational& b) { return {a, true, b, true}; }
  static Interval1D open(const ExtRational& a, const ExtRational& b) { return {a, false, b, false}; }
  static Interval1D point(const Rational& a) { return {a, true, a, true}; }

  /// Normalizes infinite ends to open.
  Interval1D canonical() const;
  bool empty() const;
  bool contains(const Rational& x) const;
  Interval1D closure() const;
  std::string str() const;

  friend bool operator==(const Interval1D& a, const Interval1D& b);
};

Interval1D intersect(const Interval1D& a, const Interval1D& b);

/// Finite union of intervals kept sorted, disjoint and non-adjacent.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval1D> parts);

  const std::vector<Interval1D>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool contains(const Rational& x) const;

  IntervalSet unite(const IntervalSet& o) const;
  IntervalSet intersect(const IntervalSet& o) const;
  std::string str() const;

 private:
  std::vector<Interval1D> parts_;
};

}  // namespace vex
