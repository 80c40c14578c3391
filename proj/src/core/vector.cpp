#include "vex/core/vector.hpp"

#include <sstream>

#include "vex/core/errors.hpp"

namespace vex {

namespace {

void same_dim(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw MalformedInput("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
}

}  // namespace

Vec zeros(std::size_t n) { return Vec(n, Rational(0)); }

Vec unit(std::size_t n, std::size_t i, const Rational& value) {
  Vec v = zeros(n);
  v.at(i) = value;
  return v;
}

Vec concat(const Vec& a, const Vec& b) {
  Vec r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Vec slice(const Vec& v, std::size_t from, std::size_t count) {
  if (from + count > v.size()) throw MalformedInput("slice out of range");
  return Vec(v.begin() + static_cast<long>(from), v.begin() + static_cast<long>(from + count));
}

Rational dot(const Vec& a, const Vec& b) {
  same_dim(a, b);
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  }
  return s;
}

Vec add(const Vec& a, const Vec& b) {
  same_dim(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  same_dim(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec scale(const Vec& v, const Rational& s) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * s;
  return r;
}

Vec neg(const Vec& v) { return scale(v, Rational(-1)); }

bool is_zero(const Vec& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Rational norm_inf(const Vec& v) {
  Rational m;
  for (const auto& x : v) m = max(m, x.abs());
  return m;
}

Rational norm_1(const Vec& v) {
  Rational s;
  for (const auto& x : v) s += x.abs();
  return s;
}

Vec primitive(const Vec& v) {
  if (is_zero(v)) return v;
  mpz_class l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& x : v) {
    mpz_class n = x.num() * (l / x.den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ints.push_back(n);
  }
  Vec r;
  for (auto& n : ints) r.emplace_back(mpq_class(n / g));
  return r;
}

std::string to_string(const Vec& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Vec& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  return os << ')';
}

NormContext::NormContext(std::vector<std::size_t> factor_dims) : factor_dims_(std::move(factor_dims)) {
  for (auto d : factor_dims_) {
    if (d == 0) throw MalformedInput("factor dimension must be positive");
    dim_ += d;
  }
}

Rational NormContext::primal(const Vec& v) const {
  if (v.size() != dim_) throw MalformedInput("norm: dimension mismatch");
  Rational m;
  std::size_t at = 0;
  for (auto d : factor_dims_) {
    m = max(m, norm_inf(slice(v, at, d)));
    at += d;
  }
  return m;
}

Rational NormContext::dual(const Vec& v) const {
  if (v.size() != dim_) throw MalformedInput("norm: dimension mismatch");
  Rational s;
  std::size_t at = 0;
  for (auto d : factor_dims_) {
    s += norm_1(slice(v, at, d));
    at += d;
  }
  return s;
}

}  // namespace vex
