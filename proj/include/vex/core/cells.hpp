#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vex/core/fm.hpp"
#include "vex/core/set_expr.hpp"

namespace vex {

/// One convex-or-quadratic piece of a set: a system with at most one
/// squared coordinate. `unsupported` marks pieces mixing two squared
/// coordinates, which no procedure here decides.
struct Cell {
  QSystem sys;
  bool unsupported = false;
};

/// Decomposes a set into a finite union of cells.
std::vector<Cell> cells_of(const SetExpr& s);

enum class Decision { Empty, Nonempty, Unsupported };

struct DecideResult {
  Decision status = Decision::Empty;
  std::optional<Vec> witness;  // present for Nonempty whenever a rational point was found
  std::string reason;

  bool empty() const { return status == Decision::Empty; }
  bool nonempty() const { return status == Decision::Nonempty; }
};

DecideResult decide_cell(const Cell& c);

/// Exact emptiness of the intersection of same-dimension sets.
DecideResult decide_intersection(const std::vector<SetExpr>& sets);

/// Decides d(p, S) < r, i.e. whether S meets the open sup-norm ball B_r(p).
/// A Nonempty answer carries a point of S within r of p when one is rational.
DecideResult distance_below(const Vec& p, const SetExpr& s, const Rational& r);

}  // namespace vex
