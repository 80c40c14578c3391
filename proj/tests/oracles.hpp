#pragma once

// Brute-force reference computations used to cross-check the closed forms.
// They sample the defining limits directly and share no code with the
// cone module.

#include <random>

#include "vex/core/pq_function.hpp"
#include "vex/core/vector.hpp"

namespace oracle {

using vex::PQFunction;
using vex::Quadratic;
using vex::Rational;
using vex::Vec;

inline Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> n(-8, 8);
  return Rational(n(rng), 4);
}

/// Continuous function with up to three pieces and small coefficients.
inline PQFunction random_pq(std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-3, 3), count(0, 2);
  const int nb = count(rng);
  std::vector<Rational> bps;
  Rational at(-1);
  for (int i = 0; i < nb; ++i) {
    at += Rational(1 + std::abs(c(rng)), 2);
    bps.push_back(at);
  }
  std::vector<Quadratic> pieces;
  pieces.push_back({Rational(c(rng), 2), Rational(c(rng)), Rational(c(rng))});
  for (int i = 0; i < nb; ++i) {
    Quadratic q{Rational(c(rng), 2), Rational(c(rng)), 0};
    const Rational v = pieces.back().eval(bps[static_cast<std::size_t>(i)]);
    q.a0 = v - q.eval(bps[static_cast<std::size_t>(i)]);
    pieces.push_back(q);
  }
  return PQFunction(bps, pieces);
}

/// max over sampled epigraph points x with 0 < |x - x̄| <= r of
/// <d, x - x̄> / |x - x̄|, the quantity whose limsup defines Fréchet normals.
inline Rational frechet_ratio(const PQFunction& f, const Rational& a, const Vec& d, const Rational& r) {
  const Rational b = f(a);
  Rational best;
  bool have = false;
  for (int j = -16; j <= 16; ++j) {
    const Rational h = r * Rational(j, 16);
    for (int w = 0; w <= 4; ++w) {
      const Rational u = h;
      const Rational v = f(a + h) - b + r * Rational(w, 4);
      const Rational n = vex::max(u.abs(), v.abs());
      if (n.is_zero() || n > r) continue;
      const Rational ratio = (d[0] * u + d[1] * v) / n;
      if (!have || ratio > best) {
        best = ratio;
        have = true;
      }
    }
  }
  return best;
}

/// Sampled test of the sequential Clarke tangent definition at (a, f(a)):
/// from base points of the graph near the reference point, a step t·z must
/// land in the epigraph up to a vertical correction that vanishes relative
/// to t. Returns true when the correction ratio at the finest scale is small.
inline bool clarke_tangent_sampled(const PQFunction& f, const Rational& a, const Vec& z) {
  Rational worst(0);
  const Rational r = vex::pow2(-12);
  for (int j = -8; j <= 8; ++j) {
    const Rational h = a + r * Rational(j, 2);
    for (int w = 0; w <= 1; ++w) {
      const Rational base_y = f(h) + r * Rational(w * j * j, 64);
      for (int k = 1; k <= 2; ++k) {
        const Rational t = r * Rational(k, 2);
        const Rational gap = f(h + t * z[0]) - (base_y + t * z[1]);
        const Rational ratio = gap / t;
        if (ratio > worst) worst = ratio;
      }
    }
  }
  return worst <= Rational(1, 8);
}

}  // namespace oracle
