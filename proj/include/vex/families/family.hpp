#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vex/core/interval.hpp"
#include "vex/core/set_expr.hpp"
#include "vex/prefs/levelset.hpp"

namespace vex {

/// Identifies one member of a family: a list position, a real parameter, an
/// integer index n, or an index point y.
struct MemberParam {
  enum class Kind { Index, Scalar, Point };
  Kind kind = Kind::Index;
  long index = 0;
  Rational t;
  Vec y;

  static MemberParam of_index(long i) { return {Kind::Index, i, {}, {}}; }
  static MemberParam of_scalar(Rational t) { return {Kind::Scalar, 0, std::move(t), {}}; }
  static MemberParam of_point(Vec y) { return {Kind::Point, 0, {}, std::move(y)}; }

  std::string str() const;
  friend bool operator==(const MemberParam&, const MemberParam&) = default;
};

struct FamilyMember {
  MemberParam param;
  SetExpr set;
};

/// A family of subsets of ℝⁿ in one of the finitely described forms.
class SetFamily {
 public:
  enum class Kind { Finite, ParamInterval, SingletonSeq, XiDelta, ProductWith };

  static SetFamily finite(std::size_t dim, std::vector<SetExpr> members);
  /// {base + t·direction : t ∈ domain}; base must be closed.
  static SetFamily param_interval(Interval1D domain, SetExpr base, Vec direction);
  /// {{offset + scale/n} : n = 1, 2, ...}
  static SetFamily singleton_seq(Vec offset, Vec scale);
  /// {cl L(y) : y ∈ L⁻(ȳ) ∩ B_δ(ȳ)}
  static SetFamily xi_delta(LevelSetMapping l, Vec y_bar, Rational delta);
  /// {Ω × A : A ∈ inner}
  static SetFamily product_with(SetExpr omega, SetFamily inner);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }

  const std::vector<SetExpr>& finite_members() const { return *sets_; }
  const Interval1D& domain() const { return domain_; }
  const SetExpr& base() const { return sets_->at(0); }
  const Vec& direction() const { return vec_a_; }
  const Vec& offset() const { return vec_a_; }
  const Vec& seq_scale() const { return vec_b_; }
  const LevelSetMapping& levelset() const { return *levelset_; }
  const Vec& y_bar() const { return vec_a_; }
  const Rational& delta() const { return delta_; }
  const SetExpr& omega() const { return sets_->at(0); }
  const SetFamily& inner() const { return *inner_; }

  bool valid_param(const MemberParam& p) const;
  /// Throws MalformedInput for a parameter outside the family.
  SetExpr realize(const MemberParam& p) const;
  std::string describe() const;

  /// Members A with d(center, A) < radius in a fixed order, at most `budget`
  /// of them. `depth` bounds the dyadic grids used by scanning variants.
  std::vector<FamilyMember> members_within(const Vec& center, const Rational& radius, std::size_t budget = 64,
                                           int depth = 12) const;

  /// Whether every member A with d(center, A) < radius contains p. Empty
  /// when this cannot be decided exactly for the family.
  std::optional<bool> all_qualifying_contain(const Vec& center, const Rational& radius, const Vec& p) const;

 private:
  SetFamily(Kind k, std::size_t dim) : kind_(k), dim_(dim) {}
  std::vector<FamilyMember> param_members(const Vec& center, const Rational& radius, std::size_t budget,
                                          int depth) const;

  Kind kind_;
  std::size_t dim_;
  std::shared_ptr<const std::vector<SetExpr>> sets_;
  Interval1D domain_;
  Vec vec_a_, vec_b_;
  Rational delta_;
  std::shared_ptr<const LevelSetMapping> levelset_;
  std::shared_ptr<const SetFamily> inner_;
};

/// {Ω × A : A ∈ fam}; finite families stay finite.
SetFamily product_family(const SetExpr& omega, const SetFamily& fam);

SetFamily xi_delta_family(const LevelSetMapping& l, const Vec& y_bar, const Rational& delta);

/// For a polyhedral-base parametric family: the exact set of parameters t
/// in the domain with d(center, base + t·direction) < radius. Empty optional
/// when the base is not polyhedral.
std::optional<Interval1D> qualifying_parameters(const SetFamily& fam, const Vec& center, const Rational& radius);

}  // namespace vex
