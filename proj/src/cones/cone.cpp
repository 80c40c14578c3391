#include "vex/cones/cone.hpp"

#include <algorithm>
#include <sstream>

#include "vex/core/errors.hpp"
#include "vex/core/lp.hpp"

namespace vex {

FGCone FGCone::zero(std::size_t dim) { return FGCone{dim, {}, {}, std::nullopt}; }

FGCone FGCone::whole(std::size_t dim) {
  FGCone c{dim, {}, {}, std::nullopt};
  for (std::size_t i = 0; i < dim; ++i) c.lineality.push_back(unit(dim, i));
  return c;
}

FGCone FGCone::ray(const Vec& g) { return generated(g.size(), {g}); }

FGCone FGCone::generated(std::size_t dim, Matrix gens, Matrix lin) {
  FGCone c{dim, {}, {}, std::nullopt};
  for (auto& g : gens) {
    if (g.size() != dim) throw MalformedInput("cone generator dimension mismatch");
    if (!vex::is_zero(g)) c.generators.push_back(primitive(g));
  }
  for (auto& l : lin) {
    if (l.size() != dim) throw MalformedInput("cone lineality dimension mismatch");
    if (!vex::is_zero(l)) c.lineality.push_back(primitive(l));
  }
  return c;
}

bool FGCone::is_zero() const { return generators.empty() && lineality.empty(); }

std::string FGCone::describe() const {
  std::ostringstream os;
  if (is_zero()) return "{0}";
  os << "cone{";
  for (std::size_t i = 0; i < generators.size(); ++i) os << (i ? ", " : "") << generators[i];
  os << '}';
  if (!lineality.empty()) {
    os << " + span{";
    for (std::size_t i = 0; i < lineality.size(); ++i) os << (i ? ", " : "") << lineality[i];
    os << '}';
  }
  return os.str();
}

bool cone_member(const FGCone& c, const Vec& v) {
  if (v.size() != c.dim) throw MalformedInput("cone membership: dimension mismatch");
  if (c.h_rows) {
    return std::all_of(c.h_rows->begin(), c.h_rows->end(), [&](const Vec& r) { return dot(r, v).sign() <= 0; });
  }
  if (vex::is_zero(v)) return true;
  // v = Σ λ_i g_i + Σ μ_j l_j with λ >= 0.
  const std::size_t ng = c.generators.size();
  const std::size_t nv = ng + c.lineality.size();
  if (nv == 0) return false;
  HPolyhedron sys(nv);
  for (std::size_t k = 0; k < c.dim; ++k) {
    Vec a(nv);
    for (std::size_t i = 0; i < ng; ++i) a[i] = c.generators[i][k];
    for (std::size_t j = 0; j < c.lineality.size(); ++j) a[ng + j] = c.lineality[j][k];
    sys.add({std::move(a), Rel::Eq, v[k]});
  }
  for (std::size_t i = 0; i < ng; ++i) sys.add({unit(nv, i, -1), Rel::Le, 0});
  return lp_feasible(sys).feasible;
}

namespace {

// Calls f on every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

FGCone cone_from_h(std::size_t dim, const Matrix& le_rows, const Matrix& eq_rows) {
  Matrix all = le_rows;
  all.insert(all.end(), eq_rows.begin(), eq_rows.end());
  FGCone out = FGCone::zero(dim);
  out.lineality = null_space(all, dim);

  // Pointed part lives in the orthogonal complement of the lineality space.
  Matrix fixed = eq_rows;
  fixed.insert(fixed.end(), out.lineality.begin(), out.lineality.end());
  const std::size_t r = rank(fixed, dim);
  if (r >= dim) return out;
  const std::size_t need = dim - 1 - r;
  auto feasible = [&](const Vec& d) {
    return std::all_of(le_rows.begin(), le_rows.end(), [&](const Vec& a) { return dot(a, d).sign() <= 0; });
  };
  for_each_subset(le_rows.size(), need, [&](const std::vector<std::size_t>& idx) {
    Matrix sys = fixed;
    for (auto i : idx) sys.push_back(le_rows[i]);
    const Matrix ns = null_space(sys, dim);
    if (ns.size() != 1) return;
    for (const Vec& d : {ns[0], neg(ns[0])}) {
      if (!feasible(d)) continue;
      const Vec p = primitive(d);
      if (std::find(out.generators.begin(), out.generators.end(), p) == out.generators.end()) {
        out.generators.push_back(p);
      }
    }
  });
  return out;
}

FGCone polar(const FGCone& c) {
  FGCone p = cone_from_h(c.dim, c.generators, c.lineality);
  Matrix rows = c.generators;
  for (const auto& l : c.lineality) {
    rows.push_back(l);
    rows.push_back(neg(l));
  }
  p.h_rows = std::move(rows);
  return p;
}

Matrix h_rows_of(const FGCone& c) {
  if (c.h_rows) return *c.h_rows;
  const FGCone p = polar(c);
  Matrix rows = p.generators;
  for (const auto& l : p.lineality) {
    rows.push_back(l);
    rows.push_back(neg(l));
  }
  return rows;
}

HPolyhedron as_polyhedron(const FGCone& c) {
  HPolyhedron h(c.dim);
  for (auto& r : h_rows_of(c)) h.add({std::move(r), Rel::Le, 0});
  return h;
}

FGCone cone_sum(const FGCone& a, const FGCone& b) {
  if (a.dim != b.dim) throw MalformedInput("cone sum: dimension mismatch");
  FGCone s = FGCone::zero(a.dim);
  s.generators = a.generators;
  s.generators.insert(s.generators.end(), b.generators.begin(), b.generators.end());
  s.lineality = a.lineality;
  s.lineality.insert(s.lineality.end(), b.lineality.begin(), b.lineality.end());
  return s;
}

FGCone cone_intersection(const std::vector<FGCone>& cs) {
  if (cs.empty()) throw MalformedInput("intersection of no cones");
  FGCone sum = FGCone::zero(cs[0].dim);
  for (const auto& c : cs) sum = cone_sum(sum, polar(c));
  return polar(sum);
}

FGCone cone_product(const std::vector<FGCone>& cs) {
  std::size_t total = 0;
  for (const auto& c : cs) total += c.dim;
  FGCone out = FGCone::zero(total);
  std::size_t at = 0;
  for (const auto& c : cs) {
    std::vector<std::size_t> coords;
    for (std::size_t j = 0; j < c.dim; ++j) coords.push_back(at + j);
    out = cone_sum(out, cone_embed(c, total, coords));
    at += c.dim;
  }
  return out;
}

FGCone cone_embed(const FGCone& c, std::size_t total, const std::vector<std::size_t>& coords) {
  auto lift = [&](const Vec& v) {
    Vec w = zeros(total);
    for (std::size_t j = 0; j < coords.size(); ++j) w[coords[j]] = v[j];
    return w;
  };
  FGCone out = FGCone::zero(total);
  for (const auto& g : c.generators) out.generators.push_back(lift(g));
  for (const auto& l : c.lineality) out.lineality.push_back(lift(l));
  return out;
}

bool cone_equal(const FGCone& a, const FGCone& b) {
  if (a.dim != b.dim) return false;
  auto inside = [](const FGCone& x, const FGCone& y) {
    for (const auto& g : x.generators) {
      if (!cone_member(y, g)) return false;
    }
    for (const auto& l : x.lineality) {
      if (!cone_member(y, l) || !cone_member(y, neg(l))) return false;
    }
    return true;
  };
  return inside(a, b) && inside(b, a);
}

}  // namespace vex
