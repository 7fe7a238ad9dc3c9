#include "grwsym/soliton.hpp"

#include <algorithm>
#include <cmath>

#include "grwsym/errors.hpp"
#include "grwsym/symmetry.hpp"

namespace grwsym {

namespace {

std::span<const double> fiber_of(std::span<const double> p) { return p.subspan(1); }

Jet3 time_jet(const ScalarExpr& e, double t) {
  const Jet3 slot = Jet3::variable(t);
  return e.eval(std::span<const Jet3>(&slot, 1));
}

/// 1/2 L_Z gbar + Ric at a point.
TensorValue soliton_lhs(const GRWSpacetime& s, const SplitVector& z, std::span<const double> p) {
  return 0.5 * grw_lie_metric_tensor(s, z, p) + grw_ricci_tensor(s, p);
}

double fiber_einstein_defect(const GRWSpacetime& s, std::span<const double> p, double factor) {
  const auto x = fiber_of(p);
  return max_abs_diff(ricci_at(s.fiber(), x), factor * metric_at(s.fiber(), x));
}

bool is_zero_field(const VectorFieldSpec& v) {
  return std::all_of(v.components.begin(), v.components.end(), [](const ScalarExpr& e) { return e.is_constant_zero(); });
}

}  // namespace

double soliton_residual(const SolitonInstance& inst, const PointSet& pts) {
  const GRWSpacetime& s = inst.spacetime;
  double worst = 0;
  for (const auto& p : pts)
    worst = std::max(worst, max_abs_diff(soliton_lhs(s, inst.field, p), inst.lambda * metric_at(s.ambient(), p)));
  return worst;
}

LambdaFit fit_lambda(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts) {
  if (pts.size() < 2) throw PreconditionError("lambda fit needs at least 2 samples");
  LambdaFit fit;
  double num = 0, den = 0;
  std::vector<TensorValue> lhs, g;
  for (const auto& p : pts) {
    lhs.push_back(soliton_lhs(s, z, p));
    g.push_back(metric_at(s.ambient(), p));
    double pn = 0, pd = 0;
    const auto a = lhs.back().entries(), b = g.back().entries();
    for (std::size_t i = 0; i < a.size(); ++i) {
      pn += a[i] * b[i];
      pd += b[i] * b[i];
    }
    fit.pointwise.push_back(pn / pd);
    num += pn;
    den += pd;
  }
  fit.lambda = num / den;
  for (std::size_t k = 0; k < pts.size(); ++k) fit.residual = std::max(fit.residual, max_abs_diff(lhs[k], fit.lambda * g[k]));
  fit.pointwise_stdev = stdev(fit.pointwise);
  return fit;
}

FiberSolitonResult induced_base_and_fiber(const SolitonInstance& inst, const PointSet& pts, const Tolerances& tol) {
  FiberSolitonResult out;
  out.check = {"induced_base_and_fiber", Status::Pass, {}, {}};
  CheckResult& r = out.check;
  const GRWSpacetime& s = inst.spacetime;
  const double res = soliton_residual(inst, pts);
  r.values["soliton_residual"] = res;
  if (res >= tol.exact) {
    r.vacuous("instance is not a soliton");
    return out;
  }
  const double n = double(s.n());
  const auto ts = sample_times(pts);
  for (double t : ts) {
    const WarpJet w = s.warp_at(t);
    const Jet3 h = time_jet(inst.field.h, t);
    out.base_residual = std::max(out.base_residual, std::abs(h.d1 - (inst.lambda - n * w.ddf / w.f)));
    out.mu_samples.push_back(inst.lambda * w.f * w.f + f_diamond(s, t) - h.v * w.f * w.df);
  }
  out.is_constant = stdev(out.mu_samples) < tol.exact;
  r.values["base_residual"] = out.base_residual;
  r.values["mu"] = mean(out.mu_samples);
  r.values["mu_stdev"] = stdev(out.mu_samples);
  r.values["mu_constant"] = out.is_constant;
  r.require(out.base_residual < tol.exact, "h' differs from lambda - n f''/f");
  if (!out.is_constant) {
    r.notes.push_back("mu varies with t; no fiber soliton asserted");
    return out;
  }
  const double mu = mean(out.mu_samples);
  for (const auto& p : pts) {
    const auto x = fiber_of(p);
    const double f2 = std::pow(s.warp_at(p[0]).f, 2);
    const TensorValue g = metric_at(s.fiber(), x);
    const TensorValue lhs = (0.5 * f2) * lie_metric_at(s.fiber(), inst.field.zeta, x) + ricci_at(s.fiber(), x);
    out.residual = std::max(out.residual, max_abs_diff(lhs, mu * g));
  }
  r.values["fiber_residual"] = out.residual;
  r.require(out.residual < tol.exact, "(M, g, f^2 zeta, mu) is not a soliton");
  return out;
}

CheckResult einstein_fiber_from_conformal_soliton(const SolitonInstance& inst, const PointSet& pts,
                                                  const Tolerances& tol) {
  CheckResult r{"einstein_fiber_from_conformal_soliton", Status::Pass, {}, {}};
  const GRWSpacetime& s = inst.spacetime;
  const double res = soliton_residual(inst, pts);
  const ConformalFactor cf = extract_conformal_factor(s, inst.field, pts);
  r.values["soliton_residual"] = res;
  r.values["conformal_residual"] = cf.residual;
  if (res >= tol.exact || cf.residual >= tol.exact) {
    r.vacuous(res >= tol.exact ? "instance is not a soliton" : "field is not conformal");
    return r;
  }
  const double n = double(s.n());
  double einstein = 0, lam_rel = 0, fdot = 0, fiber_ric = 0, killing_err = 0, killing_negated = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& p = pts[k];
    const WarpJet w = s.warp_at(p[0]);
    einstein = std::max(einstein, fiber_einstein_defect(s, p, (n - 1.0) * (w.f * w.ddf - w.df * w.df)));
    lam_rel = std::max(lam_rel, std::abs(inst.lambda - 0.5 * cf.rho[k] - n * w.ddf / w.f));
    fdot = std::max(fdot, std::abs(w.df));
    fiber_ric = std::max(fiber_ric, ricci_at(s.fiber(), fiber_of(p)).max_abs());
    killing_err = std::max(killing_err, std::abs(inst.lambda - n * w.ddf / w.f));
    killing_negated = std::max(killing_negated, std::abs(inst.lambda + n * w.ddf / w.f));
  }
  const bool killing = max_abs(cf.rho) < tol.exact;
  r.values["rho_mean"] = mean(cf.rho);
  r.values["half_rho_mean"] = 0.5 * mean(cf.rho);
  r.values["einstein_residual"] = einstein;
  r.values["lambda_relation_residual"] = lam_rel;
  r.require(einstein < tol.exact, "fiber is not Einstein with factor (n-1)(f f'' - f'^2)");
  r.require(lam_rel < tol.exact, "lambda - rho/2 differs from n f''/f");
  if (fdot < tol.exact) {
    r.values["fiber_ricci_max"] = fiber_ric;
    r.require(fiber_ric < tol.exact, "f is constant but the fiber is not Ricci-flat");
  }
  if (killing) {
    r.values["killing_lambda_error"] = killing_err;
    r.values["killing_lambda_error_negated"] = killing_negated;
    r.require(killing_err < tol.fd, "Killing soliton with lambda != n f''/f");
  }
  return r;
}

CheckResult conformal_from_einstein_soliton(const SolitonInstance& inst, const PointSet& pts, const Tolerances& tol) {
  CheckResult r{"conformal_from_einstein_soliton", Status::Pass, {}, {}};
  const GRWSpacetime& s = inst.spacetime;
  const double res = soliton_residual(inst, pts);
  double fdd = 0, einstein = 0;
  for (const auto& p : pts) {
    const WarpJet w = s.warp_at(p[0]);
    fdd = std::max(fdd, std::abs(w.ddf));
    einstein = std::max(einstein, fiber_einstein_defect(s, p, -(double(s.n()) - 1.0) * w.df * w.df));
  }
  r.values["soliton_residual"] = res;
  r.values["fdd_max"] = fdd;
  r.values["einstein_residual"] = einstein;
  if (res >= tol.exact || fdd >= tol.exact || einstein >= tol.exact) {
    r.vacuous(res >= tol.exact ? "instance is not a soliton"
                               : (fdd >= tol.exact ? "f'' does not vanish" : "fiber is not Einstein with factor -(n-1)f'^2"));
    return r;
  }
  const ConformalFactor cf = extract_conformal_factor(s, inst.field, pts);
  double factor_err = 0;
  for (double rho : cf.rho) factor_err = std::max(factor_err, std::abs(rho - 2.0 * inst.lambda));
  r.values["conformal_residual"] = cf.residual;
  r.values["rho_mean"] = mean(cf.rho);
  r.values["factor_error"] = factor_err;
  r.require(cf.residual < tol.exact, "field is not conformal");
  r.require(factor_err < tol.exact, "conformal factor differs from 2 lambda");
  return r;
}

CheckResult concircular_soliton_ricci_flat(const SolitonInstance& inst, const PointSet& pts, const Tolerances& tol) {
  CheckResult r{"concircular_soliton_ricci_flat", Status::Pass, {}, {}};
  const GRWSpacetime& s = inst.spacetime;
  const double res = soliton_residual(inst, pts);
  const ConcircularResult cc = ambient_concircular(s, inst.field, pts);
  double factor_err = 0;
  for (double rho : cc.rho) factor_err = std::max(factor_err, std::abs(rho - 1.0));
  std::vector<double> bracket;
  for (double t : sample_times(pts)) {
    const WarpJet w = s.warp_at(t);
    bracket.push_back((double(s.n()) - 1.0) * (w.f * w.ddf - w.df * w.df));
  }
  r.values["soliton_residual"] = res;
  r.values["concircular_residual"] = cc.residual;
  r.values["factor_error"] = factor_err;
  r.values["bracket_mean"] = mean(bracket);
  r.values["bracket_stdev"] = stdev(bracket);
  if (res >= tol.exact || cc.residual >= tol.exact || factor_err >= tol.exact) {
    r.vacuous(res >= tol.exact ? "instance is not a soliton" : "field is not concircular with factor one");
    return r;
  }
  if (stdev(bracket) >= tol.exact) {
    r.vacuous("(n-1)(f f'' - f'^2) is not constant");
    return r;
  }
  double ric = 0;
  for (const auto& p : pts) ric = std::max(ric, ricci_at(s.fiber(), fiber_of(p)).max_abs());
  r.values["fiber_ricci_max"] = ric;
  r.require(ric < tol.exact, "fiber is not Ricci-flat");
  return r;
}

CheckResult sufficient_conditions_soliton(const GRWSpacetime& s, const SplitVector& z, const ScalarExpr& sigma,
                                          const ScalarExpr& rho, double mu, const PointSet& pts,
                                          const Tolerances& tol) {
  CheckResult r{"sufficient_conditions_soliton", Status::Pass, {}, {}};
  const auto& coords = s.ambient().coords;
  const ScalarExpr sg = sigma.rebind(coords), rh = rho.rebind(coords);
  const double n = double(s.n());
  double c1 = 0, c2 = 0, c3 = 0, c4 = 0;
  std::vector<double> lambdas;
  for (const auto& p : pts) {
    const auto x = fiber_of(p);
    const WarpJet w = s.warp_at(p[0]);
    const Jet3 h = time_jet(z.h, p[0]);
    const double sv = sg.eval(p), rv = rh.eval(p);
    c1 = std::max(c1, max_abs_diff(lie_metric_at(s.fiber(), z.zeta, x), (2.0 * rv) * metric_at(s.fiber(), x)));
    c2 = std::max(c2, std::abs(h.d1 - sv));
    c3 = std::max(c3, fiber_einstein_defect(s, p, mu));
    const double lhs = (sv - rv) * w.f * w.f;
    const double rhs = mu + h.v * w.df * w.f - (n - 1.0) * w.f * w.ddf + (n - 1.0) * w.df * w.df;
    c4 = std::max(c4, std::abs(lhs - rhs));
    lambdas.push_back(sv + n * w.ddf / w.f);
  }
  r.values["fiber_conformal_residual"] = c1;
  r.values["base_conformal_residual"] = c2;
  r.values["einstein_residual"] = c3;
  r.values["identity_residual"] = c4;
  std::vector<std::string> failed;
  if (c1 >= tol.exact) failed.push_back("fiber field conformal with factor 2 rho");
  if (c2 >= tol.exact) failed.push_back("h' = sigma");
  if (c3 >= tol.exact) failed.push_back("fiber Einstein with factor mu");
  if (c4 >= tol.exact) failed.push_back("compatibility identity");
  if (!failed.empty()) {
    for (const auto& f : failed) r.notes.push_back("hypothesis failed: " + f);
    r.status = Status::Vacuous;
    return r;
  }
  const double lambda = mean(lambdas);
  r.values["lambda"] = lambda;
  r.values["lambda_stdev"] = stdev(lambdas);
  r.require(stdev(lambdas) < tol.exact, "soliton equation holds pointwise with varying lambda");
  const double res = soliton_residual({s, z, lambda}, pts);
  r.values["soliton_residual"] = res;
  r.require(res < tol.exact, "hypotheses hold but the soliton equation fails");
  return r;
}

CheckResult two_killing_soliton_props(const SolitonInstance& inst, const PointSet& pts, const Tolerances& tol) {
  CheckResult r{"two_killing_soliton", Status::Pass, {}, {}};
  const GRWSpacetime& s = inst.spacetime;
  const double res = soliton_residual(inst, pts);
  const double tk = two_killing_residual(s, inst.field, pts);
  r.values["soliton_residual"] = res;
  r.values["two_killing_residual"] = tk;
  if (res >= tol.exact || tk >= tol.fd) {
    r.vacuous(res >= tol.exact ? "instance is not a soliton" : "field is not 2-Killing");
    return r;
  }
  double killing = 0, einstein = 0;
  for (const auto& p : pts) {
    killing = std::max(killing, grw_lie_metric_tensor(s, inst.field, p).max_abs());
    einstein = std::max(einstein, max_abs_diff(grw_ricci_tensor(s, p), inst.lambda * metric_at(s.ambient(), p)));
  }
  const double rc = is_zero_field(inst.field.zeta) && inst.field.h.is_constant_zero()
                        ? 0.0
                        : ricci_collineation_residual(s, inst.field, pts);
  r.values["killing_residual"] = killing;
  r.values["einstein_residual"] = einstein;
  r.values["rc_residual"] = rc;
  const bool is_killing = killing < tol.exact;
  r.require(is_killing == (einstein < tol.exact), "Killing disagrees with Einstein factor lambda");
  r.require(is_killing == (rc < tol.fd), "Killing disagrees with Ricci collineation");
  return r;
}

}  // namespace grwsym
