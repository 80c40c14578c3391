#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vex/core/set_expr.hpp"

namespace vex {

/// A level-set mapping L : ℝⁿ ⇉ ℝⁿ; v is preferred to y when v ∈ L(y).
class LevelSetMapping {
 public:
  enum class Kind { ConeTranslation, StrictPareto, SingletonMap, TableOnGrid };

  /// L(y) = y - ȳ + K. Requires ȳ ∈ K.
  static LevelSetMapping cone_translation(SetExpr k, Vec y_bar);
  /// L(y) = {v : v_j < y_j for all j}, except L(kill) = {kill}.
  static LevelSetMapping strict_pareto(std::size_t dim, std::optional<Vec> kill_point = std::nullopt);
  /// L(y) = {y}
  static LevelSetMapping singleton_map(std::size_t dim);
  /// L(y) = the tabulated set at grid points listed in `entries`, and
  /// y + shape everywhere else. Entry points must lie on the grid step·ℤⁿ.
  static LevelSetMapping table_on_grid(Rational step, SetExpr shape, std::vector<std::pair<Vec, SetExpr>> entries);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }

  SetExpr at(const Vec& y) const;
  SetExpr closure_at(const Vec& y) const { return at(y).closure(); }

  // Variant data, for serialization.
  const SetExpr& cone() const { return *set_; }
  const Vec& y_bar() const { return point_; }
  const std::optional<Vec>& kill_point() const { return kill_; }
  const Rational& step() const { return step_; }
  const SetExpr& shape() const { return *set_; }
  const std::vector<std::pair<Vec, SetExpr>>& entries() const { return *entries_; }

  std::string describe() const;

 private:
  LevelSetMapping(Kind k, std::size_t dim) : kind_(k), dim_(dim) {}
  Kind kind_;
  std::size_t dim_;
  std::shared_ptr<const SetExpr> set_;
  Vec point_;
  std::optional<Vec> kill_;
  Rational step_;
  std::shared_ptr<const std::vector<std::pair<Vec, SetExpr>>> entries_;
};

/// L°(y) = L(y) \ {y}
SetExpr l_circ(const LevelSetMapping& l, const Vec& y);
/// L⁻(y) = L(y) ∪ {y}
SetExpr l_minus(const LevelSetMapping& l, const Vec& y);

}  // namespace vex
