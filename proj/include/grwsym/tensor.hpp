#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace grwsym {

enum class Variance { Upper, Lower };

/// Dense multi-index array in a coordinate basis. Entry (i0, i1, ...) lives at
/// row-major offset i0*dim^(rank-1) + ... .
class TensorValue {
 public:
  TensorValue() = default;
  TensorValue(std::size_t dim, std::vector<Variance> variance);

  /// Convenience for all-lower (0,k) tensors.
  static TensorValue covariant(std::size_t dim, std::size_t rank);

  std::size_t rank() const { return variance_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<Variance>& variance() const { return variance_; }
  std::span<const double> entries() const { return entries_; }
  std::span<double> entries() { return entries_; }

  double& at(std::initializer_list<std::size_t> idx) { return entries_[offset(idx)]; }
  double at(std::initializer_list<std::size_t> idx) const { return entries_[offset(idx)]; }

  double& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) { return entries_[(i * dim_ + j) * dim_ + k]; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return entries_[(i * dim_ + j) * dim_ + k]; }
  double& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return entries_[((i * dim_ + j) * dim_ + k) * dim_ + l];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return entries_[((i * dim_ + j) * dim_ + k) * dim_ + l];
  }

  double max_abs() const;

 private:
  std::size_t offset(std::initializer_list<std::size_t> idx) const;

  std::size_t dim_ = 0;
  std::vector<Variance> variance_;
  std::vector<double> entries_;
};

/// max |a - b| over entries; shapes must agree.
double max_abs_diff(const TensorValue& a, const TensorValue& b);

TensorValue operator+(const TensorValue& a, const TensorValue& b);
TensorValue operator-(const TensorValue& a, const TensorValue& b);
TensorValue operator*(double s, const TensorValue& a);

}  // namespace grwsym
