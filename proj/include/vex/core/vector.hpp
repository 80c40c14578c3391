#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "vex/core/rational.hpp"

namespace vex {

using Vec = std::vector<Rational>;

Vec zeros(std::size_t n);
Vec unit(std::size_t n, std::size_t i, const Rational& value = 1);
Vec concat(const Vec& a, const Vec& b);
Vec slice(const Vec& v, std::size_t from, std::size_t count);

Rational dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& v, const Rational& s);
Vec neg(const Vec& v);
bool is_zero(const Vec& v);

Rational norm_inf(const Vec& v);
Rational norm_1(const Vec& v);

/// Divides by a positive scalar so the result has integer coprime entries.
Vec primitive(const Vec& v);

std::string to_string(const Vec& v);
std::ostream& operator<<(std::ostream& os, const Vec& v);

/// Block structure of a product space. The primal norm is the maximum over
/// blocks of the block sup-norm, which is the sup-norm of the whole vector;
/// the dual norm sums the block l1 norms, i.e. the l1 norm.
class NormContext {
 public:
  explicit NormContext(std::vector<std::size_t> factor_dims);
  static NormContext flat(std::size_t dim) { return NormContext({dim}); }

  std::size_t dim() const { return dim_; }
  const std::vector<std::size_t>& factor_dims() const { return factor_dims_; }

  Rational primal(const Vec& v) const;
  Rational dual(const Vec& v) const;

 private:
  std::vector<std::size_t> factor_dims_;
  std::size_t dim_ = 0;
};

}  // namespace vex
