#include "grwsym/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "grwsym/errors.hpp"

namespace grwsym {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform(double lo, double hi) {
  const double u = double(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

PointSet sample_points(const SampleRegion& region, int t_count, int fiber_count, SplitMix64& rng) {
  if (t_count < 1 || fiber_count < 1) throw PreconditionError("sample counts must be positive");
  PointSet out;
  for (int i = 0; i < t_count; ++i) {
    const double t = rng.uniform(region.t.lo, region.t.hi);
    for (int j = 0; j < fiber_count; ++j) {
      std::vector<double> p{t};
      for (const auto& side : region.fiber) p.push_back(rng.uniform(side.lo, side.hi));
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<double> sample_times(const PointSet& points) {
  std::vector<double> ts;
  for (const auto& p : points)
    if (std::find(ts.begin(), ts.end(), p[0]) == ts.end()) ts.push_back(p[0]);
  return ts;
}

double mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double s = 0;
  for (double x : v) s += x;
  return s / double(v.size());
}

double stdev(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / double(v.size()));
}

double max_abs(std::span<const double> v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace grwsym
