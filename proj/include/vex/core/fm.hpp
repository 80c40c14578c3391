#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vex/core/polyhedron.hpp"

namespace vex {

/// a·z + q·z[qvar]² rel b. The quadratic term lives on one designated
/// coordinate shared by the whole system.
struct QRow {
  Vec a;
  Rational q;
  Rel rel = Rel::Le;
  Rational b;
};

struct QSystem {
  std::size_t dim = 0;
  std::optional<std::size_t> qvar;
  std::vector<QRow> rows;
  bool contradiction = false;  // a constant row failed

  static QSystem from(const HPolyhedron& p);
  bool is_linear() const;
  HPolyhedron linear_part() const;  // valid only when is_linear()
};

/// Eliminates coordinate k (k != qvar) exactly; strictness propagates.
QSystem fm_eliminate(const QSystem& s, std::size_t k);

/// Projects a polyhedron onto the listed coordinates (in that order).
HPolyhedron fm_project(const HPolyhedron& p, const std::vector<std::size_t>& keep);

}  // namespace vex
