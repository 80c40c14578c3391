#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vex/core/vector.hpp"

namespace vex {

enum class Rel { Le, Lt, Eq };

std::string rel_str(Rel r);
Rel parse_rel(const std::string& s);

/// a·x rel b
struct LinearRow {
  Vec a;
  Rel rel = Rel::Le;
  Rational b;

  bool holds(const Vec& x) const;
};

/// Finite intersection of closed or open halfspaces and hyperplanes.
class HPolyhedron {
 public:
  HPolyhedron() = default;
  explicit HPolyhedron(std::size_t dim, std::vector<LinearRow> rows = {});

  static HPolyhedron space(std::size_t dim) { return HPolyhedron(dim); }
  /// Sup-norm ball around center; open when `open` is set.
  static HPolyhedron box(const Vec& center, const Rational& radius, bool open = true);

  std::size_t dim() const { return dim_; }
  const std::vector<LinearRow>& rows() const { return rows_; }
  bool has_strict() const;

  void add(LinearRow row);
  void add_all(const HPolyhedron& other);

  bool contains(const Vec& x) const;
  /// Same rows with "<" relaxed to "<=". Only the closure of the set when the
  /// set is nonempty; callers check that first.
  HPolyhedron relaxed() const;

  /// {x + v : x in P}
  HPolyhedron translate(const Vec& v) const;
  /// {s·x : x in P}, s > 0
  HPolyhedron scale(const Rational& s) const;
  /// Lifts into a space of dimension `total`, placing coordinate j at coords[j].
  HPolyhedron embed(std::size_t total, const std::vector<std::size_t>& coords) const;

 private:
  std::size_t dim_ = 0;
  std::vector<LinearRow> rows_;
};

HPolyhedron intersect(const HPolyhedron& p, const HPolyhedron& q);

}  // namespace vex
