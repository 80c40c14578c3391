#pragma once

#include "vex/core/polyhedron.hpp"

namespace vex {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  Vec x;
};

/// Optimizes c·x over the closure rows of `system` (strict rows are relaxed)
/// with a two-phase dense simplex under Bland's rule. Free variables.
LpResult lp_optimize(const HPolyhedron& system, const Vec& c, bool maximize);

struct FeasibilityResult {
  bool feasible = false;
  Vec witness;
};

/// Exact feasibility including strict rows. Strict rows a·x < b become
/// a·x + t <= b with 0 <= t <= 1; the system is feasible iff max t > 0.
FeasibilityResult lp_feasible(const HPolyhedron& system);

}  // namespace vex
