#pragma once

#include <map>
#include <string>

#include "grwsym/check.hpp"
#include "grwsym/grw.hpp"
#include "grwsym/sampling.hpp"

namespace grwsym {

/// Deviation of each closed form from the chart computation on the ambient
/// metric, as max |closed - oracle| / max(1, max |oracle|) over the samples.
/// Keys: connection, curvature, ricci, lie_metric (jet-only) and
/// lie_curvature, lie_ricci (finite-difference oracle).
struct OracleDiff {
  std::map<std::string, double> deviation;
  std::size_t points = 0;

  static bool uses_fd(const std::string& key) { return key == "lie_curvature" || key == "lie_ricci"; }
  double threshold(const std::string& key, const Tolerances& tol) const {
    return uses_fd(key) ? tol.oracle_fd : tol.oracle_exact;
  }
  bool within(const Tolerances& tol) const;
};

OracleDiff oracle_diff(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts);

}  // namespace grwsym
