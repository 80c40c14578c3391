#include "vex/core/polyhedron.hpp"

#include "vex/core/errors.hpp"

namespace vex {

std::string rel_str(Rel r) {
  switch (r) {
    case Rel::Le: return "<=";
    case Rel::Lt: return "<";
    default: return "=";
  }
}

Rel parse_rel(const std::string& s) {
  if (s == "<=") return Rel::Le;
  if (s == "<") return Rel::Lt;
  if (s == "=") return Rel::Eq;
  throw MalformedInput("unknown relation '" + s + "'");
}

bool LinearRow::holds(const Vec& x) const {
  const Rational v = dot(a, x);
  switch (rel) {
    case Rel::Le: return v <= b;
    case Rel::Lt: return v < b;
    default: return v == b;
  }
}

HPolyhedron::HPolyhedron(std::size_t dim, std::vector<LinearRow> rows) : dim_(dim) {
  for (auto& r : rows) add(std::move(r));
}

HPolyhedron HPolyhedron::box(const Vec& center, const Rational& radius, bool open) {
  HPolyhedron p(center.size());
  const Rel rel = open ? Rel::Lt : Rel::Le;
  for (std::size_t i = 0; i < center.size(); ++i) {
    p.add({unit(center.size(), i), rel, center[i] + radius});
    p.add({unit(center.size(), i, -1), rel, radius - center[i]});
  }
  return p;
}

bool HPolyhedron::has_strict() const {
  for (const auto& r : rows_) {
    if (r.rel == Rel::Lt) return true;
  }
  return false;
}

void HPolyhedron::add(LinearRow row) {
  if (row.a.size() != dim_) {
    throw MalformedInput("row of length " + std::to_string(row.a.size()) + " in a polyhedron of dimension " +
                         std::to_string(dim_));
  }
  rows_.push_back(std::move(row));
}

void HPolyhedron::add_all(const HPolyhedron& other) {
  for (const auto& r : other.rows()) add(r);
}

bool HPolyhedron::contains(const Vec& x) const {
  if (x.size() != dim_) throw MalformedInput("point dimension mismatch");
  for (const auto& r : rows_) {
    if (!r.holds(x)) return false;
  }
  return true;
}

HPolyhedron HPolyhedron::relaxed() const {
  HPolyhedron p = *this;
  for (auto& r : p.rows_) {
    if (r.rel == Rel::Lt) r.rel = Rel::Le;
  }
  return p;
}

HPolyhedron HPolyhedron::translate(const Vec& v) const {
  HPolyhedron p = *this;
  for (auto& r : p.rows_) r.b += dot(r.a, v);
  return p;
}

HPolyhedron HPolyhedron::scale(const Rational& s) const {
  if (s.sign() <= 0) throw MalformedInput("scale factor must be positive");
  HPolyhedron p = *this;
  for (auto& r : p.rows_) r.b *= s;
  return p;
}

HPolyhedron HPolyhedron::embed(std::size_t total, const std::vector<std::size_t>& coords) const {
  if (coords.size() != dim_) throw MalformedInput("embedding size mismatch");
  HPolyhedron p(total);
  for (const auto& r : rows_) {
    Vec a = zeros(total);
    for (std::size_t j = 0; j < dim_; ++j) a.at(coords[j]) = r.a[j];
    p.add({std::move(a), r.rel, r.b});
  }
  return p;
}

HPolyhedron intersect(const HPolyhedron& p, const HPolyhedron& q) {
  if (p.dim() != q.dim()) throw MalformedInput("intersecting polyhedra of different dimension");
  HPolyhedron r = p;
  r.add_all(q);
  return r;
}

}  // namespace vex
