#pragma once

#include <span>
#include <string>
#include <vector>

#include "grwsym/chart.hpp"
#include "grwsym/expr.hpp"
#include "grwsym/tensor.hpp"

namespace grwsym {

/// Open interval (lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double t) const { return t > lo && t < hi; }
};

/// f and its first three t-derivatives at one instant.
struct WarpJet {
  double f = 1.0, df = 0.0, ddf = 0.0, dddf = 0.0;
};

/// The warped product I x_f M with metric -dt^2 + f(t)^2 g. Ambient
/// coordinates are (t, fiber coordinates...).
class GRWSpacetime {
 public:
  /// Validates that the fiber is Riemannian, does not use the name "t",
  /// and that `f` depends on t only.
  static GRWSpacetime make(MetricField fiber, ScalarExpr f, Interval t_domain);

  std::size_t n() const { return fiber_.dim(); }
  const MetricField& fiber() const { return fiber_; }
  const ScalarExpr& f() const { return f_; }
  const Interval& t_domain() const { return t_domain_; }
  const MetricField& ambient() const { return ambient_; }

  /// Throws PreconditionError outside t_domain and DomainError when f <= 0.
  WarpJet warp_at(double t) const;

 private:
  MetricField fiber_;
  ScalarExpr f_;
  Interval t_domain_;
  MetricField ambient_;
};

/// h(t) d_t + zeta, with zeta a vector field on the fiber.
struct SplitVector {
  ScalarExpr h;          // over {"t"}
  VectorFieldSpec zeta;  // over the fiber coordinates

  static SplitVector make(const std::string& h, const std::vector<std::string>& zeta,
                          const std::vector<std::string>& fiber_coords);
  static SplitVector from(ScalarExpr h, VectorFieldSpec zeta, const std::vector<std::string>& fiber_coords);
  /// The same field with components over the ambient chart.
  VectorFieldSpec ambient(const GRWSpacetime& s) const;
};

SplitVector operator+(const SplitVector& a, const SplitVector& b);

/// Pointwise value of a split field.
struct SplitValue {
  double time = 0.0;
  std::vector<double> fiber;
  std::vector<double> ambient() const;
};

SplitValue split_at(const SplitVector& v, std::span<const double> p);
SplitValue split_value(std::span<const double> ambient_vector);

/// -f f'' - (n-1) f'^2.
double f_diamond(const GRWSpacetime& s, double t);

/// gbar(A, B) = -ab + f^2 g(X, Y).
double grw_inner(const GRWSpacetime& s, const SplitValue& a, const SplitValue& b, std::span<const double> p);

SplitValue grw_connection(const GRWSpacetime& s, const SplitVector& a, const SplitVector& b, std::span<const double> p);
SplitValue grw_curvature(const GRWSpacetime& s, const SplitValue& a, const SplitValue& b, const SplitValue& c,
                         std::span<const double> p);
double grw_ricci(const GRWSpacetime& s, const SplitValue& a, const SplitValue& b, std::span<const double> p);
double grw_lie_metric(const GRWSpacetime& s, const SplitVector& z, const SplitValue& a, const SplitValue& b,
                      std::span<const double> p);
double grw_lie_curvature(const GRWSpacetime& s, const SplitVector& z, const SplitValue& a, const SplitValue& b,
                         const SplitValue& c, const SplitValue& d, std::span<const double> p);
double grw_lie_ricci(const GRWSpacetime& s, const SplitVector& z, const SplitValue& a, const SplitValue& b,
                     std::span<const double> p);

// Closed forms assembled in the ambient coordinate basis, for comparison
// with the chart oracle. Index layouts match chart.hpp.

/// (i, j) = (Dbar_{d_i} B)^j.
TensorValue grw_connection_tensor(const GRWSpacetime& s, const SplitVector& b, std::span<const double> p);
TensorValue grw_curvature_tensor(const GRWSpacetime& s, std::span<const double> p);
TensorValue grw_ricci_tensor(const GRWSpacetime& s, std::span<const double> p);
TensorValue grw_lie_metric_tensor(const GRWSpacetime& s, const SplitVector& z, std::span<const double> p);
TensorValue grw_lie_curvature_tensor(const GRWSpacetime& s, const SplitVector& z, std::span<const double> p);
TensorValue grw_lie_ricci_tensor(const GRWSpacetime& s, const SplitVector& z, std::span<const double> p);

}  // namespace grwsym
