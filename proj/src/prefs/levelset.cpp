#include "vex/prefs/levelset.hpp"

#include <sstream>

#include "vex/core/errors.hpp"
#include "vex/core/set_ops.hpp"

namespace vex {

LevelSetMapping LevelSetMapping::cone_translation(SetExpr k, Vec y_bar) {
  if (k.dim() != y_bar.size()) throw MalformedInput("cone translation: dimension mismatch");
  if (!k.contains(y_bar)) throw MalformedInput("cone translation: the reference point must lie in K");
  LevelSetMapping l(Kind::ConeTranslation, k.dim());
  l.set_ = std::make_shared<const SetExpr>(std::move(k));
  l.point_ = std::move(y_bar);
  return l;
}

LevelSetMapping LevelSetMapping::strict_pareto(std::size_t dim, std::optional<Vec> kill_point) {
  if (dim == 0) throw MalformedInput("strict Pareto: dimension must be positive");
  if (kill_point && kill_point->size() != dim) throw MalformedInput("strict Pareto: kill point dimension");
  LevelSetMapping l(Kind::StrictPareto, dim);
  l.kill_ = std::move(kill_point);
  return l;
}

LevelSetMapping LevelSetMapping::singleton_map(std::size_t dim) {
  if (dim == 0) throw MalformedInput("singleton map: dimension must be positive");
  return LevelSetMapping(Kind::SingletonMap, dim);
}

LevelSetMapping LevelSetMapping::table_on_grid(Rational step, SetExpr shape,
                                               std::vector<std::pair<Vec, SetExpr>> entries) {
  if (step.sign() <= 0) throw MalformedInput("table: grid step must be positive");
  const std::size_t n = shape.dim();
  for (const auto& [p, s] : entries) {
    if (p.size() != n || s.dim() != n) throw MalformedInput("table: entry dimension mismatch");
    for (const auto& c : p) {
      if (!(c / step).is_integer()) throw MalformedInput("table: entry " + to_string(p) + " is off the grid");
    }
  }
  LevelSetMapping l(Kind::TableOnGrid, n);
  l.step_ = std::move(step);
  l.set_ = std::make_shared<const SetExpr>(std::move(shape));
  l.entries_ = std::make_shared<const std::vector<std::pair<Vec, SetExpr>>>(std::move(entries));
  return l;
}

SetExpr LevelSetMapping::at(const Vec& y) const {
  if (y.size() != dim_) throw MalformedInput("level set: dimension mismatch");
  switch (kind_) {
    case Kind::ConeTranslation: return set_->translate(sub(y, point_));
    case Kind::StrictPareto: {
      if (kill_ && *kill_ == y) return SetExpr::singleton(y);
      HPolyhedron p(dim_);
      for (std::size_t j = 0; j < dim_; ++j) p.add({unit(dim_, j), Rel::Lt, y[j]});
      return SetExpr::polyhedron(p);
    }
    case Kind::SingletonMap: return SetExpr::singleton(y);
    case Kind::TableOnGrid:
      for (const auto& [p, s] : *entries_) {
        if (p == y) return s;
      }
      return set_->translate(y);
  }
  throw UnsupportedClass("level set kind");
}

std::string LevelSetMapping::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::ConeTranslation: os << "y - " << point_ << " + " << set_->describe(); break;
    case Kind::StrictPareto:
      os << "strict-pareto(" << dim_ << ")";
      if (kill_) os << " with L(" << *kill_ << ") = {" << *kill_ << "}";
      break;
    case Kind::SingletonMap: os << "{y}"; break;
    case Kind::TableOnGrid: os << "table(step " << step_ << ", " << entries_->size() << " entries)"; break;
  }
  return os.str();
}

SetExpr l_circ(const LevelSetMapping& l, const Vec& y) { return puncture(l.at(y), y); }

SetExpr l_minus(const LevelSetMapping& l, const Vec& y) {
  const SetExpr s = l.at(y);
  if (s.contains(y)) return s;
  return SetExpr::union_of(l.dim(), {s, SetExpr::singleton(y)});
}

}  // namespace vex
