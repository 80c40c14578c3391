#include "vex/core/lp.hpp"

#include <cstddef>
#include <optional>
#include <vector>

#include "vex/core/errors.hpp"

namespace vex {

namespace {

// Dense tableau in canonical form: each row i has basis_[i] as unit column.
// Row `obj_` holds reduced costs, the rhs entry holds -objective.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), a_(rows, std::vector<Rational>(cols)), rhs_(rows), basis_(rows), obj_(cols) {}

  std::size_t m_;
  std::size_t n_;
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> obj_;
  Rational obj_rhs_;

  void set_costs(const std::vector<Rational>& c) {
    obj_ = c;
    obj_rhs_ = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational cb = c[basis_[i]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!a_[i][j].is_zero()) obj_[j] -= cb * a_[i][j];
      }
      obj_rhs_ -= cb * rhs_[i];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = a_[r][c];
    if (p != Rational(1)) {
      for (auto& v : a_[r]) {
        if (!v.is_zero()) v /= p;
      }
      rhs_[r] /= p;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || a_[i][c].is_zero()) continue;
      const Rational f = a_[i][c];
      for (std::size_t j = 0; j < n_; ++j) {
        if (!a_[r][j].is_zero()) a_[i][j] -= f * a_[r][j];
      }
      rhs_[i] -= f * rhs_[r];
    }
    if (!obj_[c].is_zero()) {
      const Rational f = obj_[c];
      for (std::size_t j = 0; j < n_; ++j) {
        if (!a_[r][j].is_zero()) obj_[j] -= f * a_[r][j];
      }
      obj_rhs_ -= f * rhs_[r];
    }
    basis_[r] = c;
  }

  // Minimizes the current cost row over columns j < allowed. Returns false
  // when unbounded.
  bool minimize(std::size_t allowed) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (obj_[j].sign() < 0) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (a_[i][*enter].sign() <= 0) continue;
        Rational ratio = rhs_[i] / a_[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<long>(r));
    rhs_.erase(rhs_.begin() + static_cast<long>(r));
    basis_.erase(basis_.begin() + static_cast<long>(r));
    --m_;
  }
};

}  // namespace

LpResult lp_optimize(const HPolyhedron& system, const Vec& c, bool maximize) {
  const std::size_t n = system.dim();
  if (c.size() != n) throw MalformedInput("objective dimension mismatch");
  const auto& rows = system.rows();
  const std::size_t m = rows.size();

  std::size_t slacks = 0;
  for (const auto& r : rows) {
    if (r.rel != Rel::Eq) ++slacks;
  }
  // Columns: x+ (n), x- (n), slacks, artificials (one per row needing one).
  std::vector<bool> needs_art(m, false);
  std::size_t arts = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const bool slack_basic = rows[i].rel != Rel::Eq && rows[i].b.sign() >= 0;
    if (!slack_basic) {
      needs_art[i] = true;
      ++arts;
    }
  }
  const std::size_t real_cols = 2 * n + slacks;
  Tableau t(m, real_cols + arts);
  std::size_t slack_at = 2 * n;
  std::size_t art_at = real_cols;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& r = rows[i];
    const bool flip = r.b.sign() < 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (r.a[j].is_zero()) continue;
      t.a_[i][j] = flip ? -r.a[j] : r.a[j];
      t.a_[i][n + j] = -t.a_[i][j];
    }
    t.rhs_[i] = flip ? -r.b : r.b;
    if (r.rel != Rel::Eq) {
      t.a_[i][slack_at] = flip ? Rational(-1) : Rational(1);
      if (!needs_art[i]) t.basis_[i] = slack_at;
      ++slack_at;
    }
    if (needs_art[i]) {
      t.a_[i][art_at] = 1;
      t.basis_[i] = art_at;
      ++art_at;
    }
  }

  if (arts > 0) {
    std::vector<Rational> c1(t.n_);
    for (std::size_t j = real_cols; j < t.n_; ++j) c1[j] = 1;
    t.set_costs(c1);
    t.minimize(t.n_);
    if (!t.obj_rhs_.is_zero()) return {LpStatus::Infeasible, {}, {}};
    // Drive artificials out of the basis; rows where that fails are redundant.
    for (std::size_t i = 0; i < t.m_;) {
      if (t.basis_[i] < real_cols) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < real_cols; ++j) {
        if (!t.a_[i][j].is_zero()) {
          col = j;
          break;
        }
      }
      if (col) {
        t.pivot(i, *col);
        ++i;
      } else {
        t.drop_row(i);
      }
    }
  }

  std::vector<Rational> c2(t.n_);
  for (std::size_t j = 0; j < n; ++j) {
    c2[j] = maximize ? -c[j] : c[j];
    c2[n + j] = -c2[j];
  }
  t.set_costs(c2);
  if (!t.minimize(real_cols)) return {LpStatus::Unbounded, {}, {}};

  Vec x = zeros(n);
  for (std::size_t i = 0; i < t.m_; ++i) {
    const std::size_t b = t.basis_[i];
    if (b < n) x[b] += t.rhs_[i];
    else if (b < 2 * n) x[b - n] -= t.rhs_[i];
  }
  Rational value = dot(c, x);
  return {LpStatus::Optimal, std::move(value), std::move(x)};
}

FeasibilityResult lp_feasible(const HPolyhedron& system) {
  const std::size_t n = system.dim();
  for (const auto& r : system.rows()) {
    if (r.a.size() != n) throw MalformedInput("row dimension mismatch");
  }
  if (!system.has_strict()) {
    auto res = lp_optimize(system, zeros(n), false);
    if (res.status == LpStatus::Infeasible) return {};
    return {true, std::move(res.x)};
  }
  HPolyhedron lifted(n + 1);
  for (const auto& r : system.rows()) {
    Vec a = r.a;
    a.push_back(r.rel == Rel::Lt ? Rational(1) : Rational(0));
    lifted.add({std::move(a), r.rel == Rel::Lt ? Rel::Le : r.rel, r.b});
  }
  lifted.add({unit(n + 1, n), Rel::Le, 1});
  lifted.add({unit(n + 1, n, -1), Rel::Le, 0});
  auto res = lp_optimize(lifted, unit(n + 1, n), true);
  if (res.status != LpStatus::Optimal || res.value.sign() <= 0) return {};
  res.x.pop_back();
  return {true, std::move(res.x)};
}

}  // namespace vex
