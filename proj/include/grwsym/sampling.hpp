#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "grwsym/grw.hpp"

namespace grwsym {

/// SplitMix64 (Steele, Lea, Flood). `split()` derives an independent stream.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [lo, hi) from the top 53 bits.
  double uniform(double lo, double hi);
  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

struct SampleRegion {
  Interval t;
  std::vector<Interval> fiber;  // one closed box side per fiber coordinate
};

using PointSet = std::vector<std::vector<double>>;

/// t_count instants, each paired with fiber_count fiber points.
PointSet sample_points(const SampleRegion& region, int t_count, int fiber_count, SplitMix64& rng);

/// Distinct t values in first-seen order.
std::vector<double> sample_times(const PointSet& points);

double mean(std::span<const double> v);
/// Population standard deviation.
double stdev(std::span<const double> v);
double max_abs(std::span<const double> v);

}  // namespace grwsym
