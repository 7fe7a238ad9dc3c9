#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "grwsym/expr.hpp"
#include "grwsym/tensor.hpp"

namespace grwsym {

/// Metric given by lower-index component expressions over a coordinate chart.
struct MetricField {
  std::vector<std::string> coords;
  std::vector<std::vector<ScalarExpr>> components;  // dim x dim, bound to `coords`
  std::vector<int> signature;                       // +1 / -1 per dimension

  std::size_t dim() const { return coords.size(); }

  /// Parse component strings (row-major dim x dim) over `coords`.
  static MetricField from_strings(std::vector<std::string> coords, const std::vector<std::vector<std::string>>& rows,
                                  std::vector<int> signature);
  /// Diagonal metric from per-coordinate expressions.
  static MetricField diagonal(std::vector<std::string> coords, const std::vector<std::string>& diag, std::vector<int> signature);
};

/// Contravariant components over the chart coordinates.
struct VectorFieldSpec {
  std::vector<ScalarExpr> components;

  static VectorFieldSpec from_strings(const std::vector<std::string>& comps, const std::vector<std::string>& coords);
  static VectorFieldSpec zero(const std::vector<std::string>& coords);
  std::size_t dim() const { return components.size(); }
};

/// Value and coordinate gradient of a field at a point: jac[i][j] = d_i V^j.
struct FieldJet {
  std::vector<double> value;
  std::vector<std::vector<double>> jac;
};

FieldJet field_jet_at(const VectorFieldSpec& v, std::span<const double> p);
std::vector<double> field_at(const VectorFieldSpec& v, std::span<const double> p);

/// Tolerances shared by oracle self-checks.
struct ChartTolerances {
  double symmetry = 1e-12;  // |g_ij - g_ji|
  double fd_step = 1e-5;    // finite-difference base step
};

TensorValue metric_at(const MetricField& m, std::span<const double> p);
TensorValue inverse_metric_at(const MetricField& m, std::span<const double> p);
/// Gamma^k_ij stored at (k, i, j).
TensorValue christoffel_at(const MetricField& m, std::span<const double> p);
/// R_ijkl = g(R(d_i, d_j) d_k, d_l) with R(X,Y)Z = D_X D_Y Z - D_Y D_X Z - D_[X,Y] Z.
TensorValue riemann_at(const MetricField& m, std::span<const double> p);
/// R^a_bcd stored at (a, b, c, d) with R(d_c, d_d) d_b = R^a_bcd d_a.
TensorValue riemann_mixed_at(const MetricField& m, std::span<const double> p);
/// Ric_jk = tr(X -> R(X, d_j) d_k).
TensorValue ricci_at(const MetricField& m, std::span<const double> p);
double scalar_curvature_at(const MetricField& m, std::span<const double> p);
/// (D_{d_i} zeta)^j stored at (i, j).
TensorValue cov_deriv_vector_at(const MetricField& m, const VectorFieldSpec& zeta, std::span<const double> p);
/// (L_zeta g)_ij = g(D_i zeta, d_j) + g(d_i, D_j zeta).
TensorValue lie_metric_at(const MetricField& m, const VectorFieldSpec& zeta, std::span<const double> p);

/// A covariant tensor field supplied as a pointwise evaluator.
using TensorFieldFn = std::function<TensorValue(std::span<const double>)>;

/// Lie derivative of a covariant tensor field. The directional derivative
/// zeta(T) uses a 4th-order central difference along zeta with step
/// fd_step * max(1, |p|_inf); the d zeta terms are exact.
TensorValue lie_tensor_at(const MetricField& m, const VectorFieldSpec& zeta, const TensorFieldFn& tensor,
                          std::span<const double> p, double fd_step = 1e-5);

/// H^u_ij = d_i d_j u - Gamma^k_ij d_k u.
TensorValue hessian_at(const MetricField& m, const ScalarExpr& u, std::span<const double> p);
double laplacian_at(const MetricField& m, const ScalarExpr& u, std::span<const double> p);

/// R(X,Y,Y,X) / (g(X,X) g(Y,Y) - g(X,Y)^2); positive on round spheres.
/// Throws GeometryError when |denominator| < min_gram.
double sectional_curvature_at(const MetricField& m, std::span<const double> p, std::span<const double> x,
                              std::span<const double> y, double min_gram = 1e-10);

struct GeodesicSample {
  std::vector<double> point;
  std::vector<double> velocity;
};

struct Trajectory {
  std::vector<GeodesicSample> samples;
  double dt = 0.0;
  bool aborted = false;  // left the chart domain; samples hold the partial path
  std::string error;
};

/// Classical RK4 on x'' = -Gamma(x', x').
Trajectory integrate_geodesic(const MetricField& m, std::span<const double> p0, std::span<const double> v0, int steps,
                              double dt);

/// max over interior samples of |D_s^2 J + R(J, x') x'|_inf with covariant
/// derivatives from finite differences of J along the samples.
double jacobi_residual(const MetricField& m, const Trajectory& geodesic, const std::vector<std::vector<double>>& j_samples);
double jacobi_residual(const MetricField& m, const Trajectory& geodesic, const VectorFieldSpec& j);

}  // namespace grwsym
