#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "vex/core/set_expr.hpp"

namespace vex {

/// Set-valued mapping F : ℝⁿ ⇉ ℝᵐ with a finitely represented graph.
class MappingExpr {
 public:
  enum class Kind { Epigraphical, PolyhedralGraph, Product };

  /// F(x) = [f(x), +inf) on ℝ.
  static MappingExpr epigraphical(PQFunction f);
  /// gph F given directly as a subset of ℝ^(x_dim + y_dim), x first.
  static MappingExpr polyhedral_graph(std::size_t x_dim, std::size_t y_dim, SetExpr graph);
  /// F(x_1, ..., x_k) = F_1(x_1) × ... × F_k(x_k).
  static MappingExpr product(std::vector<MappingExpr> factors);

  Kind kind() const { return kind_; }
  std::size_t x_dim() const { return x_dim_; }
  std::size_t y_dim() const { return y_dim_; }
  const PQFunction& function() const { return fn_; }
  const std::vector<MappingExpr>& factors() const { return *factors_; }

  /// Graph as a subset of ℝ^(x_dim + y_dim) with coordinates (x, y).
  const SetExpr& graph() const { return graph_; }
  bool in_graph(const Vec& x, const Vec& y) const;
  /// F(x) as a set in ℝ^y_dim.
  SetExpr value_at(const Vec& x) const;
  std::string describe() const;

 private:
  MappingExpr(Kind k, std::size_t xd, std::size_t yd, SetExpr g)
      : kind_(k), x_dim_(xd), y_dim_(yd), graph_(std::move(g)) {}

  Kind kind_;
  std::size_t x_dim_;
  std::size_t y_dim_;
  SetExpr graph_;
  PQFunction fn_;
  std::shared_ptr<const std::vector<MappingExpr>> factors_;
};

/// F(D) for epigraphical F and a 1-D domain D: [m, +inf) or (m, +inf) with m
/// the exact infimum of f over D. Empty for empty D.
SetExpr image_of(const MappingExpr& F, const SetExpr& domain);

}  // namespace vex
