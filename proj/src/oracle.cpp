#include "grwsym/oracle.hpp"

#include <algorithm>

#include "grwsym/chart.hpp"

namespace grwsym {

namespace {

double rel(const TensorValue& closed, const TensorValue& oracle) {
  return max_abs_diff(closed, oracle) / std::max(1.0, oracle.max_abs());
}

}  // namespace

bool OracleDiff::within(const Tolerances& tol) const {
  return std::all_of(deviation.begin(), deviation.end(),
                     [&](const auto& kv) { return kv.second < threshold(kv.first, tol); });
}

OracleDiff oracle_diff(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts) {
  OracleDiff out;
  for (const char* k : {"connection", "curvature", "ricci", "lie_metric", "lie_curvature", "lie_ricci"})
    out.deviation[k] = 0.0;
  const MetricField& amb = s.ambient();
  const VectorFieldSpec za = z.ambient(s);
  auto bump = [&](const char* key, double v) { out.deviation[key] = std::max(out.deviation[key], v); };
  for (const auto& p : pts) {
    bump("connection", rel(grw_connection_tensor(s, z, p), cov_deriv_vector_at(amb, za, p)));
    bump("curvature", rel(grw_curvature_tensor(s, p), riemann_at(amb, p)));
    bump("ricci", rel(grw_ricci_tensor(s, p), ricci_at(amb, p)));
    bump("lie_metric", rel(grw_lie_metric_tensor(s, z, p), lie_metric_at(amb, za, p)));
    const auto lr = lie_tensor_at(amb, za, [&](std::span<const double> q) { return riemann_at(amb, q); }, p);
    bump("lie_curvature", rel(grw_lie_curvature_tensor(s, z, p), lr));
    const auto lric = lie_tensor_at(amb, za, [&](std::span<const double> q) { return ricci_at(amb, q); }, p);
    bump("lie_ricci", rel(grw_lie_ricci_tensor(s, z, p), lric));
  }
  out.points = pts.size();
  return out;
}

}  // namespace grwsym
