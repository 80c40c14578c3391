#pragma once

#include <optional>
#include <vector>

#include "vex/core/cells.hpp"
#include "vex/core/set_expr.hpp"

namespace vex {

/// The set as a single H-polyhedron when its structure is convex polyhedral
/// (Polyhedron, Interval, Singleton, and products/embeddings of these).
std::optional<HPolyhedron> as_hpolyhedron(const SetExpr& s);

/// Interval as a 1-D polyhedron.
HPolyhedron interval_rows(const Interval1D& i);

/// S \ {p}. A polyhedral S containing p becomes a union of 2n pieces
/// S ∩ {x_j < p_j}, S ∩ {x_j > p_j}. Throws UnsupportedClass for epigraphs.
SetExpr puncture(const SetExpr& s, const Vec& p);

/// ℝⁿ \ S as a list of polyhedra whose union is the complement. Throws
/// UnsupportedClass when S is not a finite union of polyhedral sets.
std::vector<HPolyhedron> complement_regions(const SetExpr& s);

struct InclusionResult {
  Decision status = Decision::Empty;  // Empty: A \ B is empty, i.e. A ⊆ B
  std::optional<Vec> witness;         // a point of A outside B
  bool included() const { return status == Decision::Empty; }
};

/// Exact test of A ⊆ B by deciding A ∩ (ℝⁿ \ B) = ∅ region by region.
InclusionResult included(const SetExpr& a, const SetExpr& b);

/// Intersection of polyhedral sets as one polyhedron; other classes throw.
SetExpr meet_polyhedral(const std::vector<SetExpr>& sets);

}  // namespace vex
