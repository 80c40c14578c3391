#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vex/core/linalg.hpp"
#include "vex/core/polyhedron.hpp"

namespace vex {

/// Closed convex cone cone(generators) + span(lineality) in ℝ^dim. The
/// trivial cone {0} has neither. `h_rows`, when present, is an equivalent
/// description {v : r·v <= 0 for every row r}.
struct FGCone {
  std::size_t dim = 0;
  Matrix generators;
  Matrix lineality;
  std::optional<Matrix> h_rows;

  static FGCone zero(std::size_t dim);
  static FGCone whole(std::size_t dim);
  static FGCone ray(const Vec& g);
  static FGCone generated(std::size_t dim, Matrix gens, Matrix lin = {});

  bool is_zero() const;
  std::string describe() const;
};

/// Exact membership via the H-rows when known, else an LP over generator
/// coefficients.
bool cone_member(const FGCone& c, const Vec& v);

/// {y : <y, v> <= 0 for all v in C}, with a reduced V-description.
FGCone polar(const FGCone& c);

/// V-description of {y : A y <= 0, E y = 0}.
FGCone cone_from_h(std::size_t dim, const Matrix& le_rows, const Matrix& eq_rows);

/// H-description of C as {v : r·v <= 0} rows (equalities appear as two rows).
Matrix h_rows_of(const FGCone& c);

/// As an HPolyhedron in ℝ^dim.
HPolyhedron as_polyhedron(const FGCone& c);

FGCone cone_sum(const FGCone& a, const FGCone& b);
FGCone cone_intersection(const std::vector<FGCone>& cs);
/// Block-diagonal product in ℝ^(a.dim + b.dim + ...).
FGCone cone_product(const std::vector<FGCone>& cs);
/// Lifts into ℝ^total with coordinate j placed at coords[j]; the other
/// coordinates are zero.
FGCone cone_embed(const FGCone& c, std::size_t total, const std::vector<std::size_t>& coords);
/// Mutual membership of generators.
bool cone_equal(const FGCone& a, const FGCone& b);

}  // namespace vex
