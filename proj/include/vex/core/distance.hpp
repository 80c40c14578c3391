#pragma once

#include "vex/core/set_expr.hpp"

namespace vex {

/// Exact sup-norm distance d(p, S); +inf for the empty set. Throws
/// NonRationalValue when the infimum is irrational (possible only for
/// epigraphs of curved pieces).
ExtRational distance(const Vec& p, const SetExpr& s);
ExtRational distance(const Vec& p, const SetExpr& s, const NormContext& ctx);

}  // namespace vex
