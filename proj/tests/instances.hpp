#pragma once

// The worked instances shared by several test binaries.

#include "vex/families/family.hpp"
#include "vex/stationarity/check.hpp"

namespace inst {

using namespace vex;

inline PQFunction phi(int i) {
  switch (i) {
    case 1: return PQFunction::constant(0);
    case 2: return PQFunction({-1}, {Quadratic{0, 1, 1}, Quadratic{0, 0, 0}});
    case 3: return PQFunction({}, {Quadratic{-1, 0, 0}});
    default: return PQFunction({0}, {Quadratic{0, 1, 0}, Quadratic{-1, 0, 0}});
  }
}

inline MappingExpr F(int i) { return MappingExpr::epigraphical(phi(i)); }

inline SetExpr halfline_le(const Rational& t) {
  return SetExpr::polyhedron(HPolyhedron(1, {{Vec{1}, Rel::Le, t}}));
}

/// {(-inf, t] : t in R}
inline SetFamily halflines() { return SetFamily::param_interval(Interval1D::all(), halfline_le(0), Vec{1}); }

inline TripleProblem triple(int i) {
  return TripleProblem::make(F(i), SetExpr::space(1), halflines(), Vec{0}, Vec{0});
}

}  // namespace inst
