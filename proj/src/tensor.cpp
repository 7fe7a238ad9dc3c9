#include "grwsym/tensor.hpp"

#include <cmath>

#include "grwsym/errors.hpp"

namespace grwsym {

namespace {
std::size_t ipow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

void require_same_shape(const TensorValue& a, const TensorValue& b) {
  if (a.dim() != b.dim() || a.variance() != b.variance()) throw GeometryError("tensor shape mismatch");
}
}  // namespace

TensorValue::TensorValue(std::size_t dim, std::vector<Variance> variance)
    : dim_(dim), variance_(std::move(variance)), entries_(ipow(dim, variance_.size()), 0.0) {}

TensorValue TensorValue::covariant(std::size_t dim, std::size_t rank) {
  return TensorValue(dim, std::vector<Variance>(rank, Variance::Lower));
}

std::size_t TensorValue::offset(std::initializer_list<std::size_t> idx) const {
  if (idx.size() != rank()) throw GeometryError("tensor index count does not match rank");
  std::size_t off = 0;
  for (std::size_t i : idx) {
    if (i >= dim_) throw GeometryError("tensor index out of range");
    off = off * dim_ + i;
  }
  return off;
}

double TensorValue::max_abs() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const TensorValue& a, const TensorValue& b) {
  require_same_shape(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

TensorValue operator+(const TensorValue& a, const TensorValue& b) {
  require_same_shape(a, b);
  TensorValue r = a;
  for (std::size_t i = 0; i < r.entries().size(); ++i) r.entries()[i] += b.entries()[i];
  return r;
}

TensorValue operator-(const TensorValue& a, const TensorValue& b) {
  require_same_shape(a, b);
  TensorValue r = a;
  for (std::size_t i = 0; i < r.entries().size(); ++i) r.entries()[i] -= b.entries()[i];
  return r;
}

TensorValue operator*(double s, const TensorValue& a) {
  TensorValue r = a;
  for (double& v : r.entries()) v *= s;
  return r;
}

}  // namespace grwsym
