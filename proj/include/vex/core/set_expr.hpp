#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "vex/core/interval.hpp"
#include "vex/core/polyhedron.hpp"
#include "vex/core/pq_function.hpp"

namespace vex {

/// Immutable set expression in ℝⁿ. Copies share structure.
class SetExpr {
 public:
  enum class Kind { Polyhedron, Union, Singleton, Interval, Epigraph, Product, Embedded };

  static SetExpr polyhedron(HPolyhedron p);
  static SetExpr space(std::size_t dim);
  static SetExpr empty(std::size_t dim);
  static SetExpr union_of(std::size_t dim, std::vector<SetExpr> members);
  static SetExpr singleton(Vec point);
  static SetExpr interval(Interval1D i);
  /// {(x, y) : y >= f(x)}
  static SetExpr epigraph(PQFunction f);
  static SetExpr product(std::vector<SetExpr> factors);
  /// Cylinder {z ∈ ℝ^ambient : (z[coords[0]], ..., z[coords[k-1]]) ∈ inner}.
  static SetExpr embedded(SetExpr inner, std::vector<std::size_t> coords, std::size_t ambient);

  Kind kind() const;
  std::size_t dim() const;

  const HPolyhedron& poly() const;
  const std::vector<SetExpr>& members() const;  // Union members or Product factors
  const Vec& point() const;
  const Interval1D& interval() const;
  const PQFunction& function() const;
  const SetExpr& inner() const;
  const std::vector<std::size_t>& coords() const;

  bool contains(const Vec& x) const;
  /// Exact closure for every variant.
  SetExpr closure() const;
  SetExpr translate(const Vec& v) const;
  /// {s·x : x in S}, s > 0
  SetExpr scale(const Rational& s) const;
  /// Set is known to be convex from its structure.
  bool is_convex() const;
  std::string describe() const;

 private:
  struct Node;
  explicit SetExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Half-open interval representation of a 1-D set, when it has one.
IntervalSet as_interval_set(const SetExpr& s);
SetExpr from_interval_set(const IntervalSet& s);

}  // namespace vex
