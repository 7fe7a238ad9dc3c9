#pragma once

#include <map>
#include <string>
#include <vector>

#include "grwsym/check.hpp"
#include "grwsym/grw.hpp"
#include "grwsym/sampling.hpp"

namespace grwsym {

struct Verdict {
  bool holds = false;
  double residual = 0.0;
};

/// Per-field classification. Verdict keys: killing, homothetic, conformal,
/// concircular, curvature_collineation, ricci_collineation,
/// conformal_ricci_collineation, matter_collineation, two_killing.
struct ClassificationReport {
  std::string field_id;
  std::map<std::string, Verdict> verdicts;
  std::vector<double> rho;  // conformal factor at each sample
  std::map<std::string, double> constants;
  std::size_t samples_used = 0;
  Tolerances tolerance;
};

struct MatterParams {
  double kappa_grav = 1.0;
  double lambda_cosmo = 0.0;
};

/// h(t) d_t with no fiber part.
SplitVector timelike(const GRWSpacetime& s, const ScalarExpr& h);

struct ConformalFactor {
  std::vector<double> rho;  // trace(gbar^-1 L gbar) / (n + 1) per point
  double residual = 0.0;    // max |L gbar - rho gbar|
};

/// Needs at least 10 points.
ConformalFactor extract_conformal_factor(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts);

ClassificationReport classify(const GRWSpacetime& s, const std::string& id, const SplitVector& z, const PointSet& pts,
                              const Tolerances& tol, const MatterParams& matter = {});

/// h d_t is conformal exactly when h = a f with constant a; the factor is 2h'.
CheckResult check_timelike_conformal(const GRWSpacetime& s, const ScalarExpr& h, const PointSet& pts,
                                     const Tolerances& tol);

/// For Z conformal on the spacetime: zeta is conformal on the fiber with
/// factor 2(h' - h f'/f) and the ambient factor is 2h'.
CheckResult check_projected_conformal(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts,
                                      const Tolerances& tol);

/// For Killing Z: constant length iff D_zeta zeta + (2hf'/f) zeta = 0 and
/// h h' + f f' g(zeta, zeta) = 0.
CheckResult check_constant_length_killing(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts,
                                          const Tolerances& tol);

/// 2 eps [-v^2 h' + h f f' g(V,V) + f^2 g(D_V zeta, V)] with eps = gbar(V,V).
/// Throws PreconditionError unless |eps| = 1 within `unit_tol`.
double conformal_factor_along_curve(const GRWSpacetime& s, const SplitVector& z, const SplitValue& v,
                                    std::span<const double> p, double unit_tol = 1e-8);

/// Checks conformal_factor_along_curve against the extracted factor for
/// unit timelike and spacelike directions at every sample.
CheckResult check_conformal_factor_along_curves(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts,
                                                const Tolerances& tol, SplitMix64& rng);

struct ConcircularResult {
  double residual = 0.0;    // max |D zeta - rho Id|
  std::vector<double> rho;  // trace(D zeta) / dim per point
};

ConcircularResult fiber_concircular(const MetricField& fiber, const VectorFieldSpec& zeta, const PointSet& fiber_pts);
ConcircularResult ambient_concircular(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts);

/// The concircular dichotomy: with f' not identically zero, Z is concircular
/// iff zeta = 0 and h = a f; with f' = 0, iff zeta is concircular on the
/// fiber with factor h'.
CheckResult check_concircular(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts, const Tolerances& tol);

/// For concircular Z with nonzero zeta: fiber Ric(zeta, zeta) = 0 and the
/// sectional curvature of span{X, zeta} vanishes (planes_per_point random X).
CheckResult concircular_curvature_consequence(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts,
                                              const Tolerances& tol, SplitMix64& rng, int planes_per_point = 5);

double curvature_collineation_residual(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts);
/// h f' f'' + h f f''' + 2 h' f f''.
double cc_ode_value(const GRWSpacetime& s, const ScalarExpr& h, double t);
/// Compares "h d_t is a curvature collineation" with "the ODE holds".
CheckResult check_timelike_cc_ode(const GRWSpacetime& s, const ScalarExpr& h, const PointSet& pts,
                                  const Tolerances& tol);
/// A fiber Killing field is a curvature collineation.
CheckResult check_fiber_killing_cc(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts,
                                   const Tolerances& tol);

double ricci_collineation_residual(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts);
/// h d_t Ricci collineation implies f'' = 0 or h / f^n constant.
CheckResult check_rc_dichotomy(const GRWSpacetime& s, const ScalarExpr& h, const PointSet& pts, const Tolerances& tol);
/// With f<> = 0 at the samples, zeta is RC on the spacetime iff RC on the fiber.
CheckResult check_rc_fdiamond_equivalence(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts,
                                          const Tolerances& tol);
/// For Z a Ricci collineation: zeta is a conformal Ricci collineation on the
/// fiber iff zeta is conformal (converse only where f<> != 0).
CheckResult check_conformal_rc(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts, const Tolerances& tol);

/// max |L_Z T| with T = (Ric - (r/2) gbar + lambda_cosmo gbar) / kappa_grav.
double matter_collineation_residual(const GRWSpacetime& s, const SplitVector& z, const MatterParams& m,
                                    const PointSet& pts);
/// max |L_Z L_Z gbar|.
double two_killing_residual(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts);

/// For Killing Z: Lap r = -Ric(Z,Z) + |DZ|^2 with r = gbar(Z,Z)/2, and the
/// fiber form when f' = h' = 0 at the samples.
CheckResult killing_length_laplacian_check(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts,
                                           const Tolerances& tol);

/// Jacobi residual of Z along the ambient geodesic from (p0, v0). Reported
/// only: no iff is asserted for it.
double killing_jacobi_residual(const GRWSpacetime& s, const SplitVector& z, std::span<const double> p0,
                               std::span<const double> v0, int steps = 200, double dt = 0.005);

/// Killing => curvature collineation => Ricci collineation on the verdicts.
bool implication_chain_holds(const ClassificationReport& r);

}  // namespace grwsym
