#include "vex/families/family.hpp"

#include <algorithm>
#include <sstream>

#include "vex/core/cells.hpp"
#include "vex/core/errors.hpp"
#include "vex/core/lp.hpp"
#include "vex/core/set_ops.hpp"

namespace vex {

std::string MemberParam::str() const {
  switch (kind) {
    case Kind::Index: return "#" + std::to_string(index);
    case Kind::Scalar: return "t=" + t.str();
    case Kind::Point: return "y=" + to_string(y);
  }
  return "";
}

SetFamily SetFamily::finite(std::size_t dim, std::vector<SetExpr> members) {
  if (members.empty()) throw MalformedInput("finite family must have at least one member");
  for (const auto& m : members) {
    if (m.dim() != dim) throw MalformedInput("family member dimension mismatch");
  }
  SetFamily f(Kind::Finite, dim);
  f.sets_ = std::make_shared<const std::vector<SetExpr>>(std::move(members));
  return f;
}

SetFamily SetFamily::param_interval(Interval1D domain, SetExpr base, Vec direction) {
  if (base.dim() != direction.size()) throw MalformedInput("parametric family: direction dimension mismatch");
  domain = domain.canonical();
  if (domain.empty()) throw MalformedInput("parametric family: empty parameter domain");
  SetFamily f(Kind::ParamInterval, base.dim());
  f.domain_ = domain;
  f.sets_ = std::make_shared<const std::vector<SetExpr>>(std::vector<SetExpr>{std::move(base)});
  f.vec_a_ = std::move(direction);
  return f;
}

SetFamily SetFamily::singleton_seq(Vec offset, Vec scale) {
  if (offset.empty() || offset.size() != scale.size()) throw MalformedInput("singleton sequence: dimension mismatch");
  SetFamily f(Kind::SingletonSeq, offset.size());
  f.vec_a_ = std::move(offset);
  f.vec_b_ = std::move(scale);
  return f;
}

SetFamily SetFamily::xi_delta(LevelSetMapping l, Vec y_bar, Rational delta) {
  if (delta.sign() <= 0) throw MalformedInput("xi-delta family: delta must be positive");
  if (l.dim() != y_bar.size()) throw MalformedInput("xi-delta family: dimension mismatch");
  SetFamily f(Kind::XiDelta, l.dim());
  f.levelset_ = std::make_shared<const LevelSetMapping>(std::move(l));
  f.vec_a_ = std::move(y_bar);
  f.delta_ = std::move(delta);
  return f;
}

SetFamily SetFamily::product_with(SetExpr omega, SetFamily inner) {
  SetFamily f(Kind::ProductWith, omega.dim() + inner.dim());
  f.sets_ = std::make_shared<const std::vector<SetExpr>>(std::vector<SetExpr>{std::move(omega)});
  f.inner_ = std::make_shared<const SetFamily>(std::move(inner));
  return f;
}

bool SetFamily::valid_param(const MemberParam& p) const {
  switch (kind_) {
    case Kind::Finite:
      return p.kind == MemberParam::Kind::Index && p.index >= 0 &&
             static_cast<std::size_t>(p.index) < sets_->size();
    case Kind::ParamInterval: return p.kind == MemberParam::Kind::Scalar && domain_.contains(p.t);
    case Kind::SingletonSeq: return p.kind == MemberParam::Kind::Index && p.index >= 1;
    case Kind::XiDelta: {
      if (p.kind != MemberParam::Kind::Point || p.y.size() != dim_) return false;
      if (norm_inf(sub(p.y, vec_a_)) >= delta_) return false;
      return p.y == vec_a_ || levelset_->at(vec_a_).contains(p.y);
    }
    case Kind::ProductWith: return inner_->valid_param(p);
  }
  return false;
}

SetExpr SetFamily::realize(const MemberParam& p) const {
  if (!valid_param(p)) throw MalformedInput("parameter " + p.str() + " is not in the family");
  switch (kind_) {
    case Kind::Finite: return (*sets_)[static_cast<std::size_t>(p.index)];
    case Kind::ParamInterval: return base().translate(scale(vec_a_, p.t));
    case Kind::SingletonSeq: return SetExpr::singleton(add(vec_a_, scale(vec_b_, Rational(1) / Rational(p.index))));
    case Kind::XiDelta: return levelset_->closure_at(p.y);
    case Kind::ProductWith: return SetExpr::product({omega(), inner_->realize(p)});
  }
  throw UnsupportedClass("family kind");
}

std::string SetFamily::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Finite:
      os << "{";
      for (std::size_t i = 0; i < sets_->size(); ++i) os << (i ? ", " : "") << (*sets_)[i].describe();
      os << "}";
      break;
    case Kind::ParamInterval:
      os << "{" << base().describe() << " + t·" << vec_a_ << " : t in " << domain_.str() << "}";
      break;
    case Kind::SingletonSeq: os << "{{" << vec_a_ << " + " << vec_b_ << "/n} : n >= 1}"; break;
    case Kind::XiDelta:
      os << "{cl L(y) : y in L-(" << vec_a_ << ") ∩ B(" << delta_ << ")}, L = " << levelset_->describe();
      break;
    case Kind::ProductWith: os << omega().describe() << " × " << inner_->describe(); break;
  }
  return os.str();
}

namespace {

// System in (x, t): x ∈ base, t ∈ domain, |center - x - t·dir| < radius.
HPolyhedron threshold_system(const HPolyhedron& base, const Interval1D& domain, const Vec& dir, const Vec& center,
                             const Rational& radius) {
  const std::size_t n = base.dim();
  std::vector<std::size_t> xs;
  for (std::size_t j = 0; j < n; ++j) xs.push_back(j);
  HPolyhedron sys = base.embed(n + 1, xs);
  sys.add_all(interval_rows(domain).embed(n + 1, {n}));
  for (std::size_t j = 0; j < n; ++j) {
    Vec a = unit(n + 1, j);
    a[n] = dir[j];
    sys.add({a, Rel::Lt, center[j] + radius});
    sys.add({neg(a), Rel::Lt, radius - center[j]});
  }
  return sys;
}

// Endpoint of the parameter set in one direction, with attainment.
std::pair<ExtRational, bool> extreme_t(const HPolyhedron& sys, bool maximize) {
  const std::size_t n = sys.dim();
  const auto r = lp_optimize(sys.relaxed(), unit(n, n - 1), maximize);
  if (r.status == LpStatus::Unbounded) {
    return {maximize ? ExtRational::pos_inf() : ExtRational::neg_inf(), false};
  }
  HPolyhedron at = sys;
  at.add({unit(n, n - 1), Rel::Eq, r.value});
  return {r.value, lp_feasible(at).feasible};
}

void push_unique(std::vector<Rational>& v, const Rational& t) {
  if (std::find(v.begin(), v.end(), t) == v.end()) v.push_back(t);
}

}  // namespace

std::optional<Interval1D> qualifying_parameters(const SetFamily& fam, const Vec& center, const Rational& radius) {
  if (fam.kind() != SetFamily::Kind::ParamInterval) throw MalformedInput("not a parametric family");
  const auto base = as_hpolyhedron(fam.base());
  if (!base) return std::nullopt;
  const HPolyhedron sys = threshold_system(*base, fam.domain(), fam.direction(), center, radius);
  if (!lp_feasible(sys).feasible) return Interval1D{Rational(0), false, Rational(0), false};
  const auto [lo, lo_at] = extreme_t(sys, false);
  const auto [hi, hi_at] = extreme_t(sys, true);
  return Interval1D{lo, lo_at, hi, hi_at}.canonical();
}

std::vector<FamilyMember> SetFamily::param_members(const Vec& center, const Rational& radius, std::size_t budget,
                                                   int depth) const {
  std::vector<Rational> ts;
  const auto q = qualifying_parameters(*this, center, radius);
  if (q) {
    if (q->empty()) return {};
    const int steps = std::min(depth, 10);
    ExtRational width = ExtRational::pos_inf();
    if (q->lo.is_finite() && q->hi.is_finite()) width = q->hi.value() - q->lo.value();
    auto scale_for = [&](const Rational& end) {
      return width.is_finite() ? width.value() : max(end.abs(), radius);
    };
    // Parameters hugging the lower threshold first, nearest first.
    if (q->lo.is_finite()) {
      const Rational lo = q->lo.value();
      if (q->lo_closed) push_unique(ts, lo);
      const Rational s = scale_for(lo);
      for (int j = steps; j >= 1; --j) push_unique(ts, lo + s * pow2(-j));
    }
    if (q->hi.is_finite()) {
      const Rational hi = q->hi.value();
      if (q->hi_closed) push_unique(ts, hi);
      const Rational s = scale_for(hi);
      for (int j = steps; j >= 1; --j) push_unique(ts, hi - s * pow2(-j));
    }
    if (!q->lo.is_finite() && !q->hi.is_finite()) {
      push_unique(ts, Rational(0));
      for (int k = 0; k <= steps; ++k) {
        push_unique(ts, pow2(k));
        push_unique(ts, -pow2(k));
      }
    }
  } else {
    // Dyadic scan over the domain.
    push_unique(ts, Rational(0));
    for (int j = 0; j <= depth; ++j) {
      for (int m = 1; m <= 4; ++m) {
        push_unique(ts, Rational(m) * pow2(-j));
        push_unique(ts, Rational(-m) * pow2(-j));
      }
    }
  }
  std::vector<FamilyMember> out;
  for (const auto& t : ts) {
    if (out.size() >= budget) break;
    if (!domain_.contains(t)) continue;
    const auto p = MemberParam::of_scalar(t);
    SetExpr s = realize(p);
    if (distance_below(center, s, radius).nonempty()) out.push_back({p, std::move(s)});
  }
  return out;
}

namespace {

// Integers n >= 1 with |center - offset - scale/n| < radius, as [first, last]
// with last = -1 for an unbounded range; first > last (both >= 0) when empty.
std::pair<long, long> seq_range(const Vec& center, const Vec& offset, const Vec& scale, const Rational& radius) {
  // u = 1/n must lie in the open interval (ulo, uhi) ∩ (0, 1].
  ExtRational ulo = Rational(0), uhi = Rational(1);
  bool uhi_closed = true;
  for (std::size_t j = 0; j < center.size(); ++j) {
    const Rational g = center[j] - offset[j];
    if (scale[j].is_zero()) {
      if (g.abs() >= radius) return {1, 0};
      continue;
    }
    Rational a = (g - radius) / scale[j];
    Rational b = (g + radius) / scale[j];
    if (scale[j].sign() < 0) std::swap(a, b);
    if (ExtRational(a) > ulo) ulo = a;
    if (ExtRational(b) < uhi || (ExtRational(b) == uhi && uhi_closed)) {
      uhi = b;
      uhi_closed = false;
    }
  }
  if (!(ulo < uhi)) return {1, 0};
  // n > 1/uhi (or >= when closed at u = 1), n < 1/ulo.
  const Rational inv_hi = Rational(1) / uhi.value();
  long first = static_cast<long>(inv_hi.floor().to_double());
  if (!(uhi_closed && inv_hi.is_integer())) first += 1;
  else first = static_cast<long>(inv_hi.to_double());
  first = std::max(first, 1L);
  if (ulo.value().is_zero()) return {first, -1};
  const Rational inv_lo = Rational(1) / ulo.value();
  long last = static_cast<long>(inv_lo.floor().to_double());
  if (inv_lo.is_integer()) last -= 1;
  return {first, last};
}

}  // namespace

std::vector<FamilyMember> SetFamily::members_within(const Vec& center, const Rational& radius, std::size_t budget,
                                                    int depth) const {
  if (center.size() != dim_) throw MalformedInput("members_within: dimension mismatch");
  if (radius.sign() <= 0) throw MalformedInput("members_within: radius must be positive");
  std::vector<FamilyMember> out;
  switch (kind_) {
    case Kind::Finite:
      for (std::size_t i = 0; i < sets_->size() && out.size() < budget; ++i) {
        if (distance_below(center, (*sets_)[i], radius).nonempty()) {
          out.push_back({MemberParam::of_index(static_cast<long>(i)), (*sets_)[i]});
        }
      }
      return out;
    case Kind::ParamInterval: return param_members(center, radius, budget, depth);
    case Kind::SingletonSeq: {
      const auto [first, last] = seq_range(center, vec_a_, vec_b_, radius);
      for (long n = first; (last < 0 || n <= last) && out.size() < budget; ++n) {
        const auto p = MemberParam::of_index(n);
        out.push_back({p, realize(p)});
      }
      return out;
    }
    case Kind::XiDelta: {
      const std::size_t n = dim_;
      const std::vector<Rational> cs{Rational(0), Rational(-1, 2), Rational(1, 2), Rational(-3, 4), Rational(3, 4)};
      std::vector<Vec> ys{vec_a_};
      for (int j = 0; j <= depth + 4; ++j) {
        const Rational h = delta_ * pow2(-j);
        std::vector<std::size_t> idx(n, 0);
        for (;;) {
          Vec y = vec_a_;
          bool all_zero = true;
          for (std::size_t k = 0; k < n; ++k) {
            y[k] += h * cs[idx[k]];
            all_zero = all_zero && idx[k] == 0;
          }
          if (!all_zero) ys.push_back(std::move(y));
          std::size_t k = 0;
          while (k < n && ++idx[k] == cs.size()) idx[k++] = 0;
          if (k == n) break;
        }
      }
      for (const auto& y : ys) {
        if (out.size() >= budget) break;
        const auto p = MemberParam::of_point(y);
        if (!valid_param(p)) continue;
        SetExpr s = realize(p);
        if (distance_below(center, s, radius).nonempty()) out.push_back({p, std::move(s)});
      }
      return out;
    }
    case Kind::ProductWith: {
      const std::size_t k = omega().dim();
      if (!distance_below(slice(center, 0, k), omega(), radius).nonempty()) return out;
      for (auto& m : inner_->members_within(slice(center, k, dim_ - k), radius, budget, depth)) {
        out.push_back({m.param, SetExpr::product({omega(), m.set})});
      }
      return out;
    }
  }
  return out;
}

std::optional<bool> SetFamily::all_qualifying_contain(const Vec& center, const Rational& radius,
                                                      const Vec& p) const {
  switch (kind_) {
    case Kind::Finite:
      for (const auto& s : *sets_) {
        const auto d = distance_below(center, s, radius);
        if (d.status == Decision::Unsupported) return std::nullopt;
        if (d.nonempty() && !s.contains(p)) return false;
      }
      return true;
    case Kind::ParamInterval: {
      const auto q = qualifying_parameters(*this, center, radius);
      if (!q) return std::nullopt;
      if (q->empty()) return true;
      // {t : p - t·dir ∈ base}
      const auto base_poly = *as_hpolyhedron(base());
      HPolyhedron c(1);
      for (const auto& r : base_poly.rows()) c.add({Vec{-dot(r.a, vec_a_)}, r.rel, r.b - dot(r.a, p)});
      const auto inc = included(SetExpr::interval(*q), SetExpr::polyhedron(c));
      if (inc.status == Decision::Unsupported) return std::nullopt;
      return inc.included();
    }
    case Kind::SingletonSeq: {
      const auto [first, last] = seq_range(center, vec_a_, vec_b_, radius);
      if (last >= 0 && first > last) return true;
      const bool constant = is_zero(vec_b_);
      if (!constant && (last < 0 || last > first)) return false;
      return realize(MemberParam::of_index(first)).contains(p);
    }
    case Kind::XiDelta: return std::nullopt;
    case Kind::ProductWith: {
      const std::size_t k = omega().dim();
      if (!distance_below(slice(center, 0, k), omega(), radius).nonempty()) return true;
      const Vec py = slice(p, k, dim_ - k);
      if (!omega().contains(slice(p, 0, k))) {
        if (!inner_->members_within(slice(center, k, dim_ - k), radius, 1).empty()) return false;
        return std::nullopt;
      }
      return inner_->all_qualifying_contain(slice(center, k, dim_ - k), radius, py);
    }
  }
  return std::nullopt;
}

SetFamily product_family(const SetExpr& omega, const SetFamily& fam) {
  if (fam.kind() == SetFamily::Kind::Finite) {
    std::vector<SetExpr> ms;
    for (const auto& m : fam.finite_members()) ms.push_back(SetExpr::product({omega, m}));
    return SetFamily::finite(omega.dim() + fam.dim(), std::move(ms));
  }
  return SetFamily::product_with(omega, fam);
}

SetFamily xi_delta_family(const LevelSetMapping& l, const Vec& y_bar, const Rational& delta) {
  return SetFamily::xi_delta(l, y_bar, delta);
}

}  // namespace vex
