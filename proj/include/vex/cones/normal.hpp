#pragma once

#include <optional>
#include <string>

#include "vex/cones/cone.hpp"
#include "vex/core/errors.hpp"
#include "vex/core/mapping.hpp"
#include "vex/core/set_expr.hpp"

namespace vex {

enum class ConeFlavor { Frechet, Clarke, Convex };

std::string flavor_str(ConeFlavor f);
ConeFlavor parse_flavor(const std::string& s);

/// A normal cone, or the empty set when the base point is outside the set.
struct NormalCone {
  bool in_set = false;
  FGCone cone;

  static NormalCone not_in_set(std::size_t dim) { return {false, FGCone::zero(dim)}; }
};

/// Thrown by coderivative when the base pair is not in the graph.
class NotInGraph : public Error {
 public:
  using Error::Error;
};

/// Normal cone of S at x. Throws UnsupportedClass for Clarke/Convex cones of
/// genuine unions and for the Convex flavor on nonconvex epigraphs.
NormalCone normal_cone(const SetExpr& s, const Vec& x, ConeFlavor flavor);

/// Clarke tangent cone, the polar of the Clarke normal cone. Throws
/// MalformedInput when x is outside S.
FGCone clarke_tangent(const SetExpr& s, const Vec& x);

struct CoderivativeResult {
  enum class Kind { Empty, Point, Segment, Ray, Polyhedral };
  Kind kind = Kind::Empty;
  /// The exact slice {x* : (x*, -y*) in N_gph F(x, y)}.
  HPolyhedron set;
  /// Point: the point. Segment: both ends. Ray: origin and direction.
  Vec a, b;

  std::string describe() const;
};

std::string coderivative_kind_str(CoderivativeResult::Kind k);

/// D*F(x, y)(y*) for the requested flavor.
CoderivativeResult coderivative(const MappingExpr& F, const Vec& x, const Vec& y, const Vec& y_star,
                                ConeFlavor flavor);

/// {x* : (x*, -y*) in N} for an arbitrary graph normal cone N in ℝ^(n+m).
CoderivativeResult slice_coderivative(const FGCone& graph_normal, std::size_t x_dim, const Vec& y_star);

}  // namespace vex
