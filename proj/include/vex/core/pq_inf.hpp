#pragma once

#include "vex/core/interval.hpp"
#include "vex/core/pq_function.hpp"

namespace vex {

struct InfResult {
  ExtRational value;  // -inf when unbounded below
  bool attained = false;
};

/// Exact infimum of f over a nonempty window. Throws MalformedInput on an
/// empty window.
InfResult pq_inf(const PQFunction& f, const Interval1D& window);

/// Same for the supremum; used for Lipschitz and sublevel computations.
struct SupResult {
  ExtRational value;
  bool attained = false;
};
SupResult pq_sup(const PQFunction& f, const Interval1D& window);

}  // namespace vex
