#pragma once

#include <vector>

#include "grwsym/check.hpp"
#include "grwsym/grw.hpp"
#include "grwsym/sampling.hpp"

namespace grwsym {

/// (gbar, Z, lambda) with 1/2 L_Z gbar + Ric = lambda gbar as the claim.
struct SolitonInstance {
  GRWSpacetime spacetime;
  SplitVector field;
  double lambda = 0.0;
};

/// max over samples and coordinate pairs of |1/2 L_Z gbar + Ric - lambda gbar|.
double soliton_residual(const SolitonInstance& inst, const PointSet& pts);

struct LambdaFit {
  double lambda = 0.0;
  double residual = 0.0;               // soliton residual at the fitted lambda
  std::vector<double> pointwise;       // per-sample least-squares lambda
  double pointwise_stdev = 0.0;
};

/// Least squares over every sample and entry. Needs at least 2 samples.
LambdaFit fit_lambda(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts);

/// The fiber soliton induced by a spacetime soliton: h' = lambda - n f''/f on
/// the base and (M, g, f^2 zeta, mu) with mu = lambda f^2 + f<> - h f f'.
struct FiberSolitonResult {
  CheckResult check;
  std::vector<double> mu_samples;  // one per sampled t
  bool is_constant = false;
  double base_residual = 0.0;
  double residual = 0.0;  // fiber soliton residual (only when mu is constant)
};

FiberSolitonResult induced_base_and_fiber(const SolitonInstance& inst, const PointSet& pts, const Tolerances& tol);

/// For a soliton whose field is conformal (L gbar = rho gbar): the fiber is
/// Einstein with factor (n-1)(f f'' - f'^2), lambda - rho/2 = n f''/f, f
/// constant gives a Ricci-flat fiber and a Killing field gives
/// lambda = n f''/f.
CheckResult einstein_fiber_from_conformal_soliton(const SolitonInstance& inst, const PointSet& pts,
                                                  const Tolerances& tol);

/// With f'' = 0 and a fiber Einstein with factor -(n-1) f'^2, the soliton
/// field is conformal with constant factor 2 lambda.
CheckResult conformal_from_einstein_soliton(const SolitonInstance& inst, const PointSet& pts, const Tolerances& tol);

/// A soliton field that is concircular with factor one, on a spacetime where
/// (n-1)(f f'' - f'^2) is constant, has a Ricci-flat fiber.
CheckResult concircular_soliton_ricci_flat(const SolitonInstance& inst, const PointSet& pts, const Tolerances& tol);

/// Hypotheses: L_zeta g = 2 rho g on the fiber, h' = sigma, fiber Einstein
/// with factor mu, and (sigma - rho) f^2 = mu + h f' f - (n-1) f f'' +
/// (n-1) f'^2. Conclusion: a soliton with constant lambda = sigma + n f''/f.
/// `sigma` and `rho` are expressions over the ambient coordinates.
CheckResult sufficient_conditions_soliton(const GRWSpacetime& s, const SplitVector& z, const ScalarExpr& sigma,
                                          const ScalarExpr& rho, double mu, const PointSet& pts,
                                          const Tolerances& tol);

/// For a 2-Killing soliton field: Killing iff the spacetime is Einstein with
/// factor lambda, and Killing iff Ricci collineation.
CheckResult two_killing_soliton_props(const SolitonInstance& inst, const PointSet& pts, const Tolerances& tol);

}  // namespace grwsym
