#include "grwsym/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "grwsym/errors.hpp"

namespace grwsym {

namespace {

std::span<const double> fiber_of(std::span<const double> p) { return p.subspan(1); }

Jet3 time_jet(const ScalarExpr& e, double t) {
  const Jet3 slot = Jet3::variable(t);
  return e.eval(std::span<const Jet3>(&slot, 1));
}

double time_value(const ScalarExpr& e, double t) { return e.eval(std::span<const double>(&t, 1)); }

double trace_against(const TensorValue& ginv, const TensorValue& t) {
  double s = 0;
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j) s += ginv(i, j) * t(i, j);
  return s;
}

/// max |T - (tr_g T / dim) g|; `factor` receives the trace part.
double conformal_defect(const TensorValue& t, const TensorValue& g, const TensorValue& ginv, double* factor = nullptr) {
  const double phi = trace_against(ginv, t) / double(t.dim());
  if (factor) *factor = phi;
  return max_abs_diff(t, phi * g);
}

double inner(const TensorValue& g, std::span<const double> x, std::span<const double> y) {
  double s = 0;
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j) s += g(i, j) * x[i] * y[j];
  return s;
}

bool is_zero_field(const VectorFieldSpec& v) {
  return std::all_of(v.components.begin(), v.components.end(), [](const ScalarExpr& e) { return e.is_constant_zero(); });
}

double max_fiber_norm(const SplitVector& z, const PointSet& pts) {
  double m = 0;
  for (const auto& p : pts) m = std::max(m, max_abs(field_at(z.zeta, fiber_of(p))));
  return m;
}

struct KillingState {
  bool killing = false;
  double residual = 0.0;
};

KillingState killing_state(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts, const Tolerances& tol) {
  double worst = 0;
  for (const auto& p : pts) worst = std::max(worst, grw_lie_metric_tensor(s, z, p).max_abs());
  return {worst < tol.exact, worst};
}

std::vector<double> fdot_samples(const GRWSpacetime& s, const std::vector<double>& ts) {
  std::vector<double> v;
  for (double t : ts) v.push_back(s.warp_at(t).df);
  return v;
}

PointSet fiber_points(const PointSet& pts) {
  PointSet out;
  for (const auto& p : pts) out.emplace_back(p.begin() + 1, p.end());
  return out;
}

TensorValue fiber_lie_ricci(const MetricField& fib, const VectorFieldSpec& zeta, std::span<const double> x) {
  return lie_tensor_at(fib, zeta, [&](std::span<const double> q) { return ricci_at(fib, q); }, x);
}

}  // namespace

SplitVector timelike(const GRWSpacetime& s, const ScalarExpr& h) {
  return SplitVector::from(h, VectorFieldSpec::zero(s.fiber().coords), s.fiber().coords);
}

ConformalFactor extract_conformal_factor(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts) {
  if (pts.size() < 10) throw PreconditionError("conformal factor extraction needs at least 10 samples");
  ConformalFactor out;
  for (const auto& p : pts) {
    const TensorValue g = metric_at(s.ambient(), p);
    const TensorValue ginv = inverse_metric_at(s.ambient(), p);
    double rho = 0;
    out.residual = std::max(out.residual, conformal_defect(grw_lie_metric_tensor(s, z, p), g, ginv, &rho));
    out.rho.push_back(rho);
  }
  return out;
}

ClassificationReport classify(const GRWSpacetime& s, const std::string& id, const SplitVector& z, const PointSet& pts,
                              const Tolerances& tol, const MatterParams& matter) {
  ClassificationReport r;
  r.field_id = id;
  r.samples_used = pts.size();
  r.tolerance = tol;

  const ConformalFactor cf = extract_conformal_factor(s, z, pts);
  r.rho = cf.rho;
  const double rho_sd = stdev(cf.rho), rho_max = max_abs(cf.rho);
  const bool conformal = cf.residual < tol.exact;
  r.verdicts["conformal"] = {conformal, cf.residual};
  const double homo = std::max(cf.residual, rho_sd);
  r.verdicts["homothetic"] = {conformal && rho_sd < tol.exact, homo};
  r.verdicts["killing"] = {conformal && rho_sd < tol.exact && rho_max < tol.exact, std::max(homo, rho_max)};
  r.constants["rho_mean"] = mean(cf.rho);
  r.constants["rho_stdev"] = rho_sd;

  const ConcircularResult cc = ambient_concircular(s, z, pts);
  r.verdicts["concircular"] = {cc.residual < tol.exact, cc.residual};
  r.constants["concircular_factor_mean"] = mean(cc.rho);

  const double cres = curvature_collineation_residual(s, z, pts);
  r.verdicts["curvature_collineation"] = {cres < tol.fd, cres};

  double rres = 0, crc = 0;
  for (const auto& p : pts) {
    const TensorValue l = grw_lie_ricci_tensor(s, z, p);
    rres = std::max(rres, l.max_abs());
    crc = std::max(crc, conformal_defect(l, metric_at(s.ambient(), p), inverse_metric_at(s.ambient(), p)));
  }
  r.verdicts["ricci_collineation"] = {rres < tol.fd, rres};
  r.verdicts["conformal_ricci_collineation"] = {crc < tol.fd, crc};

  const double mres = matter_collineation_residual(s, z, matter, pts);
  r.verdicts["matter_collineation"] = {mres < tol.fd, mres};
  const double tk = two_killing_residual(s, z, pts);
  r.verdicts["two_killing"] = {tk < tol.fd, tk};
  return r;
}

CheckResult check_timelike_conformal(const GRWSpacetime& s, const ScalarExpr& h, const PointSet& pts,
                                     const Tolerances& tol) {
  CheckResult r{"timelike_conformal", Status::Pass, {}, {}};
  std::vector<double> ratio;
  for (double t : sample_times(pts)) ratio.push_back(time_value(h, t) / s.warp_at(t).f);
  const bool proportional = stdev(ratio) < tol.exact;
  const ConformalFactor cf = extract_conformal_factor(s, timelike(s, h), pts);
  const bool conformal = cf.residual < tol.exact;
  double factor_err = 0;
  for (std::size_t k = 0; k < pts.size(); ++k)
    factor_err = std::max(factor_err, std::abs(cf.rho[k] - 2.0 * time_jet(h, pts[k][0]).d1));
  r.values["a"] = mean(ratio);
  r.values["a_stdev"] = stdev(ratio);
  r.values["conformal_residual"] = cf.residual;
  r.values["factor_error"] = factor_err;
  r.values["proportional"] = proportional;
  r.values["conformal"] = conformal;
  r.require(proportional == conformal, "conformality of h d_t disagrees with h = a f");
  if (conformal) r.require(factor_err < tol.exact, "conformal factor differs from 2h'");
  return r;
}

CheckResult check_projected_conformal(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts,
                                      const Tolerances& tol) {
  CheckResult r{"projected_conformal", Status::Pass, {}, {}};
  const ConformalFactor cf = extract_conformal_factor(s, z, pts);
  r.values["conformal_residual"] = cf.residual;
  if (cf.residual >= tol.exact) {
    r.vacuous("field is not conformal on the spacetime");
    return r;
  }
  double ambient_err = 0, fiber_res = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& p = pts[k];
    const WarpJet w = s.warp_at(p[0]);
    const Jet3 h = time_jet(z.h, p[0]);
    ambient_err = std::max(ambient_err, std::abs(cf.rho[k] - 2.0 * h.d1));
    const double phi = 2.0 * (h.d1 - h.v * w.df / w.f);
    const auto x = fiber_of(p);
    fiber_res = std::max(fiber_res, max_abs_diff(lie_metric_at(s.fiber(), z.zeta, x), phi * metric_at(s.fiber(), x)));
  }
  r.values["ambient_factor_error"] = ambient_err;
  r.values["fiber_residual"] = fiber_res;
  r.require(ambient_err < tol.exact, "ambient factor differs from 2h'");
  r.require(fiber_res < tol.exact, "fiber field is not conformal with factor 2(h' - h f'/f)");
  return r;
}

CheckResult check_constant_length_killing(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts,
                                          const Tolerances& tol) {
  CheckResult r{"constant_length_killing", Status::Pass, {}, {}};
  const KillingState ks = killing_state(s, z, pts, tol);
  r.values["killing_residual"] = ks.residual;
  if (!ks.killing) {
    r.vacuous("field is not Killing");
    return r;
  }
  double r1 = 0, r2 = 0;
  std::vector<double> length;
  for (const auto& p : pts) {
    const WarpJet w = s.warp_at(p[0]);
    const Jet3 h = time_jet(z.h, p[0]);
    const auto x = fiber_of(p);
    const TensorValue g = metric_at(s.fiber(), x);
    const TensorValue dz = cov_deriv_vector_at(s.fiber(), z.zeta, x);
    const auto zeta = field_at(z.zeta, x);
    const std::size_t n = s.n();
    for (std::size_t j = 0; j < n; ++j) {
      double dzz = 0;
      for (std::size_t i = 0; i < n; ++i) dzz += zeta[i] * dz(i, j);
      r1 = std::max(r1, std::abs(dzz + 2.0 * h.v * w.df / w.f * zeta[j]));
    }
    const double gzz = inner(g, zeta, zeta);
    r2 = std::max(r2, std::abs(h.v * h.d1 + w.f * w.df * gzz));
    length.push_back(-h.v * h.v + w.f * w.f * gzz);
  }
  const double spread = *std::max_element(length.begin(), length.end()) - *std::min_element(length.begin(), length.end());
  const bool conditions = std::max(r1, r2) < tol.exact;
  const bool constant = spread < tol.exact;
  r.values["connection_condition_residual"] = r1;
  r.values["scalar_condition_residual"] = r2;
  r.values["length_spread"] = spread;
  r.values["conditions_hold"] = conditions;
  r.values["constant_length"] = constant;
  r.require(conditions == constant, "constant length disagrees with the two Killing conditions");
  return r;
}

double conformal_factor_along_curve(const GRWSpacetime& s, const SplitVector& z, const SplitValue& v,
                                    std::span<const double> p, double unit_tol) {
  const double eps = grw_inner(s, v, v, p);
  if (std::abs(std::abs(eps) - 1.0) > unit_tol) throw PreconditionError("direction is not a unit vector");
  const WarpJet w = s.warp_at(p[0]);
  const Jet3 h = time_jet(z.h, p[0]);
  const auto x = fiber_of(p);
  const TensorValue g = metric_at(s.fiber(), x);
  const TensorValue dz = cov_deriv_vector_at(s.fiber(), z.zeta, x);
  const std::size_t n = s.n();
  std::vector<double> dvz(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dvz[j] += v.fiber[i] * dz(i, j);
  const double sign = eps > 0 ? 1.0 : -1.0;
  return 2.0 * sign *
         (-v.time * v.time * h.d1 + h.v * w.f * w.df * inner(g, v.fiber, v.fiber) + w.f * w.f * inner(g, dvz, v.fiber));
}

CheckResult check_conformal_factor_along_curves(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts,
                                                const Tolerances& tol, SplitMix64& rng) {
  CheckResult r{"conformal_factor_along_curves", Status::Pass, {}, {}};
  const ConformalFactor cf = extract_conformal_factor(s, z, pts);
  r.values["conformal_residual"] = cf.residual;
  if (cf.residual >= tol.exact) {
    r.vacuous("field is not conformal on the spacetime");
    return r;
  }
  double err = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& p = pts[k];
    const double f = s.warp_at(p[0]).f;
    const TensorValue g = metric_at(s.fiber(), fiber_of(p));
    std::vector<double> u(s.n());
    for (auto& c : u) c = rng.uniform(-1.0, 1.0);
    const double un = std::sqrt(inner(g, u, u));
    if (un < 1e-6) continue;
    const double a = rng.uniform(-1.0, 1.0);
    for (int kind = 0; kind < 2; ++kind) {
      // timelike: cosh a d_t + sinh a u/(f|u|); spacelike: the swap
      const double ct = kind == 0 ? std::cosh(a) : std::sinh(a);
      const double cx = kind == 0 ? std::sinh(a) : std::cosh(a);
      SplitValue v{ct, u};
      for (auto& c : v.fiber) c *= cx / (f * un);
      err = std::max(err, std::abs(conformal_factor_along_curve(s, z, v, p, 1e-9) - cf.rho[k]));
    }
  }
  r.values["factor_error"] = err;
  r.require(err < tol.exact, "factor along unit directions differs from the extracted factor");
  return r;
}

ConcircularResult fiber_concircular(const MetricField& fiber, const VectorFieldSpec& zeta, const PointSet& fiber_pts) {
  ConcircularResult out;
  const std::size_t n = fiber.dim();
  for (const auto& x : fiber_pts) {
    const TensorValue d = cov_deriv_vector_at(fiber, zeta, x);
    double tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += d(i, i);
    const double rho = tr / double(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out.residual = std::max(out.residual, std::abs(d(i, j) - (i == j ? rho : 0.0)));
    out.rho.push_back(rho);
  }
  return out;
}

ConcircularResult ambient_concircular(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts) {
  ConcircularResult out;
  const std::size_t d = s.n() + 1;
  for (const auto& p : pts) {
    const TensorValue c = grw_connection_tensor(s, z, p);
    double tr = 0;
    for (std::size_t i = 0; i < d; ++i) tr += c(i, i);
    const double rho = tr / double(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) out.residual = std::max(out.residual, std::abs(c(i, j) - (i == j ? rho : 0.0)));
    out.rho.push_back(rho);
  }
  return out;
}

CheckResult check_concircular(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts, const Tolerances& tol) {
  CheckResult r{"concircular_dichotomy", Status::Pass, {}, {}};
  const ConcircularResult amb = ambient_concircular(s, z, pts);
  const bool concircular = amb.residual < tol.exact;
  const auto ts = sample_times(pts);
  const bool fdot_zero = max_abs(fdot_samples(s, ts)) < tol.exact;
  r.values["residual"] = amb.residual;
  r.values["rho_mean"] = mean(amb.rho);
  r.values["rho_stdev"] = stdev(amb.rho);
  r.values["concircular"] = concircular;
  r.values["warping_constant"] = fdot_zero;
  bool other = false;
  if (!fdot_zero) {
    std::vector<double> ratio;
    for (double t : ts) ratio.push_back(time_value(z.h, t) / s.warp_at(t).f);
    const double zeta_max = max_fiber_norm(z, pts);
    r.values["a"] = mean(ratio);
    r.values["a_stdev"] = stdev(ratio);
    r.values["fiber_field_max"] = zeta_max;
    other = zeta_max < tol.exact && stdev(ratio) < tol.exact;
  } else {
    const ConcircularResult fib = fiber_concircular(s.fiber(), z.zeta, fiber_points(pts));
    double factor_err = 0;
    for (std::size_t k = 0; k < pts.size(); ++k)
      factor_err = std::max(factor_err, std::abs(fib.rho[k] - time_jet(z.h, pts[k][0]).d1));
    r.values["fiber_residual"] = fib.residual;
    r.values["fiber_factor_error"] = factor_err;
    other = fib.residual < tol.exact && factor_err < tol.exact;
  }
  r.values["dichotomy_side"] = other;
  r.require(concircular == other, "concircularity disagrees with the dichotomy");
  return r;
}

CheckResult concircular_curvature_consequence(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts,
                                              const Tolerances& tol, SplitMix64& rng, int planes_per_point) {
  CheckResult r{"concircular_curvature", Status::Pass, {}, {}};
  const ConcircularResult amb = ambient_concircular(s, z, pts);
  const double zeta_max = max_fiber_norm(z, pts);
  r.values["concircular_residual"] = amb.residual;
  if (amb.residual >= tol.exact || zeta_max < tol.exact) {
    r.vacuous(amb.residual >= tol.exact ? "field is not concircular" : "fiber part vanishes");
    return r;
  }
  double ric = 0, kappa = 0;
  int checked = 0, skipped = 0;
  for (const auto& p : pts) {
    const auto x = fiber_of(p);
    const auto zeta = field_at(z.zeta, x);
    ric = std::max(ric, std::abs(inner(ricci_at(s.fiber(), x), zeta, zeta)));
    for (int k = 0; k < planes_per_point; ++k) {
      std::vector<double> X(s.n());
      for (auto& c : X) c = rng.uniform(-1.0, 1.0);
      try {
        kappa = std::max(kappa, std::abs(sectional_curvature_at(s.fiber(), x, X, zeta)));
        ++checked;
      } catch (const GeometryError&) {
        ++skipped;
      }
    }
  }
  r.values["ricci_zeta_zeta"] = ric;
  r.values["sectional_curvature"] = kappa;
  r.values["planes_checked"] = checked;
  r.values["planes_skipped"] = skipped;
  r.require(ric < tol.exact, "fiber Ric(zeta, zeta) does not vanish");
  r.require(kappa < tol.exact, "sectional curvature of span{X, zeta} does not vanish");
  return r;
}

double curvature_collineation_residual(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts) {
  double m = 0;
  for (const auto& p : pts) m = std::max(m, grw_lie_curvature_tensor(s, z, p).max_abs());
  return m;
}

double cc_ode_value(const GRWSpacetime& s, const ScalarExpr& h, double t) {
  const WarpJet w = s.warp_at(t);
  const Jet3 hj = time_jet(h, t);
  return hj.v * w.df * w.ddf + hj.v * w.f * w.dddf + 2.0 * hj.d1 * w.f * w.ddf;
}

CheckResult check_timelike_cc_ode(const GRWSpacetime& s, const ScalarExpr& h, const PointSet& pts,
                                  const Tolerances& tol) {
  CheckResult r{"timelike_cc_ode", Status::Pass, {}, {}};
  std::vector<double> ode;
  for (double t : sample_times(pts)) ode.push_back(cc_ode_value(s, h, t));
  const double res = curvature_collineation_residual(s, timelike(s, h), pts);
  const bool ode_holds = max_abs(ode) < tol.exact;
  const bool cc = res < tol.fd;
  r.values["ode_max"] = max_abs(ode);
  r.values["ode_min"] = *std::min_element(ode.begin(), ode.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  r.values["residual"] = res;
  r.values["ode_holds"] = ode_holds;
  r.values["collineation"] = cc;
  r.require(ode_holds == cc, "curvature collineation verdict disagrees with the ODE");
  return r;
}

CheckResult check_fiber_killing_cc(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts,
                                   const Tolerances& tol) {
  CheckResult r{"fiber_killing_cc", Status::Pass, {}, {}};
  double lg = 0, hmax = 0;
  for (const auto& p : pts) {
    lg = std::max(lg, lie_metric_at(s.fiber(), z.zeta, fiber_of(p)).max_abs());
    hmax = std::max(hmax, std::abs(time_value(z.h, p[0])));
  }
  r.values["fiber_killing_residual"] = lg;
  if (lg >= tol.exact || hmax >= tol.exact) {
    r.vacuous(hmax >= tol.exact ? "field has a time component" : "fiber field is not Killing");
    return r;
  }
  const double res = curvature_collineation_residual(s, z, pts);
  r.values["residual"] = res;
  r.require(res < tol.fd, "fiber Killing field is not a curvature collineation");
  return r;
}

double ricci_collineation_residual(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts) {
  double m = 0;
  for (const auto& p : pts) m = std::max(m, grw_lie_ricci_tensor(s, z, p).max_abs());
  return m;
}

CheckResult check_rc_dichotomy(const GRWSpacetime& s, const ScalarExpr& h, const PointSet& pts, const Tolerances& tol) {
  CheckResult r{"rc_dichotomy", Status::Pass, {}, {}};
  const double res = ricci_collineation_residual(s, timelike(s, h), pts);
  std::vector<double> ratio, fdd;
  const double n = double(s.n());
  for (double t : sample_times(pts)) {
    const WarpJet w = s.warp_at(t);
    ratio.push_back(time_value(h, t) / std::pow(w.f, n));
    fdd.push_back(w.ddf);
  }
  const bool hessian_zero = max_abs(fdd) < tol.exact;
  const bool proportional = stdev(ratio) < tol.exact;
  r.values["residual"] = res;
  r.values["a"] = mean(ratio);
  r.values["a_stdev"] = stdev(ratio);
  r.values["fdd_max"] = max_abs(fdd);
  r.values["hessian_zero"] = hessian_zero;
  r.values["proportional"] = proportional;
  if (res >= tol.fd) {
    r.vacuous("h d_t is not a Ricci collineation");
    return r;
  }
  r.require(hessian_zero || proportional, "Ricci collineation with f'' != 0 and h / f^n non-constant");
  return r;
}

CheckResult check_rc_fdiamond_equivalence(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts,
                                          const Tolerances& tol) {
  CheckResult r{"rc_fdiamond_equivalence", Status::Pass, {}, {}};
  double fd = 0, hmax = 0;
  for (const auto& p : pts) {
    fd = std::max(fd, std::abs(f_diamond(s, p[0])));
    hmax = std::max(hmax, std::abs(time_value(z.h, p[0])));
  }
  r.values["fdiamond_max"] = fd;
  if (fd >= tol.exact || hmax >= tol.exact) {
    r.vacuous(fd >= tol.exact ? "f<> does not vanish" : "field has a time component");
    return r;
  }
  const double amb = ricci_collineation_residual(s, z, pts);
  double fib = 0;
  if (!is_zero_field(z.zeta))
    for (const auto& p : pts) fib = std::max(fib, fiber_lie_ricci(s.fiber(), z.zeta, fiber_of(p)).max_abs());
  r.values["ambient_residual"] = amb;
  r.values["fiber_residual"] = fib;
  r.require((amb < tol.fd) == (fib < tol.fd), "spacetime and fiber Ricci collineation verdicts differ");
  return r;
}

CheckResult check_conformal_rc(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts, const Tolerances& tol) {
  CheckResult r{"conformal_rc", Status::Pass, {}, {}};
  const double res = ricci_collineation_residual(s, z, pts);
  r.values["rc_residual"] = res;
  if (res >= tol.fd) {
    r.vacuous("field is not a Ricci collineation");
    return r;
  }
  double conf = 0, crc = 0, fd_min = INFINITY;
  for (const auto& p : pts) {
    const auto x = fiber_of(p);
    const TensorValue g = metric_at(s.fiber(), x), ginv = inverse_metric_at(s.fiber(), x);
    conf = std::max(conf, conformal_defect(lie_metric_at(s.fiber(), z.zeta, x), g, ginv));
    const TensorValue lric = is_zero_field(z.zeta) ? TensorValue::covariant(s.n(), 2) : fiber_lie_ricci(s.fiber(), z.zeta, x);
    crc = std::max(crc, conformal_defect(lric, g, ginv));
    fd_min = std::min(fd_min, std::abs(f_diamond(s, p[0])));
  }
  const bool conformal = conf < tol.exact, conformal_rc = crc < tol.fd;
  r.values["conformal_residual"] = conf;
  r.values["conformal_rc_residual"] = crc;
  r.values["fdiamond_min"] = fd_min;
  r.require(!conformal || conformal_rc, "conformal fiber field is not a conformal Ricci collineation");
  if (fd_min >= tol.exact)
    r.require(!conformal_rc || conformal, "conformal Ricci collineation is not conformal");
  else if (conformal_rc && !conformal)
    r.notes.push_back("f<> vanishes at a sample; the converse is not asserted");
  return r;
}

double matter_collineation_residual(const GRWSpacetime& s, const SplitVector& z, const MatterParams& m,
                                    const PointSet& pts) {
  if (m.kappa_grav == 0.0) throw PreconditionError("kappa_grav must be nonzero");
  const MetricField& amb = s.ambient();
  const VectorFieldSpec za = z.ambient(s);
  const TensorFieldFn T = [&](std::span<const double> q) {
    const TensorValue g = metric_at(amb, q);
    return (1.0 / m.kappa_grav) * (ricci_at(amb, q) + (m.lambda_cosmo - 0.5 * scalar_curvature_at(amb, q)) * g);
  };
  double worst = 0;
  for (const auto& p : pts) worst = std::max(worst, lie_tensor_at(amb, za, T, p).max_abs());
  return worst;
}

double two_killing_residual(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts) {
  const VectorFieldSpec za = z.ambient(s);
  const TensorFieldFn lg = [&](std::span<const double> q) { return grw_lie_metric_tensor(s, z, q); };
  double worst = 0;
  for (const auto& p : pts) worst = std::max(worst, lie_tensor_at(s.ambient(), za, lg, p).max_abs());
  return worst;
}

CheckResult killing_length_laplacian_check(const GRWSpacetime& s, const SplitVector& z, const PointSet& pts,
                                           const Tolerances& tol) {
  CheckResult r{"killing_length_laplacian", Status::Pass, {}, {}};
  const KillingState ks = killing_state(s, z, pts, tol);
  r.values["killing_residual"] = ks.residual;
  if (!ks.killing) {
    r.vacuous("field is not Killing");
    return r;
  }
  const MetricField& amb = s.ambient();
  const auto& coords = amb.coords;
  const std::size_t n = s.n();
  // r = (-h^2 + f^2 g(zeta, zeta)) / 2 as an expression on the ambient chart
  ScalarExpr gzz = ScalarExpr::constant(0.0, coords);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& gij = s.fiber().components[i][j];
      if (gij.is_constant_zero()) continue;
      gzz = gzz + gij.rebind(coords) * z.zeta.components[i].rebind(coords) * z.zeta.components[j].rebind(coords);
    }
  const ScalarExpr h = z.h.rebind(coords), f = s.f().rebind(coords);
  const ScalarExpr rexpr = ScalarExpr::constant(0.5, coords) * (f * f * gzz - h * h);

  double diff = 0, special = 0;
  bool static_case = true;
  for (const auto& p : pts) {
    const double lhs = laplacian_at(amb, rexpr, p);
    const TensorValue dz = grw_connection_tensor(s, z, p);
    const TensorValue g = metric_at(amb, p), ginv = inverse_metric_at(amb, p);
    double norm = 0;
    for (std::size_t a = 0; a <= n; ++a)
      for (std::size_t b = 0; b <= n; ++b)
        for (std::size_t c = 0; c <= n; ++c)
          for (std::size_t d = 0; d <= n; ++d) norm += ginv(a, b) * g(c, d) * dz(a, c) * dz(b, d);
    const SplitValue zv = split_at(z, p);
    const double rhs = -grw_ricci(s, zv, zv, p) + norm;
    diff = std::max(diff, std::abs(lhs - rhs));

    const WarpJet w = s.warp_at(p[0]);
    if (std::abs(w.df) >= tol.exact || std::abs(time_jet(z.h, p[0]).d1) >= tol.exact) {
      static_case = false;
      continue;
    }
    const auto x = fiber_of(p);
    const TensorValue fg = metric_at(s.fiber(), x), fginv = inverse_metric_at(s.fiber(), x);
    const TensorValue fdz = cov_deriv_vector_at(s.fiber(), z.zeta, x);
    double fnorm = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          for (std::size_t d = 0; d < n; ++d) fnorm += fginv(a, b) * fg(c, d) * fdz(a, c) * fdz(b, d);
    special = std::max(special, std::abs(lhs - (-inner(ricci_at(s.fiber(), x), zv.fiber, zv.fiber) + fnorm)));
  }
  r.values["identity_error"] = diff;
  r.require(diff < tol.fd, "Laplacian of the length differs from -Ric(Z,Z) + |DZ|^2");
  if (static_case) {
    r.values["fiber_identity_error"] = special;
    r.require(special < tol.fd, "fiber form of the identity fails with f' = h' = 0");
  }
  return r;
}

double killing_jacobi_residual(const GRWSpacetime& s, const SplitVector& z, std::span<const double> p0,
                               std::span<const double> v0, int steps, double dt) {
  const Trajectory traj = integrate_geodesic(s.ambient(), p0, v0, steps, dt);
  if (traj.samples.size() < 5) throw GeometryError("geodesic left the chart too early: " + traj.error);
  return jacobi_residual(s.ambient(), traj, z.ambient(s));
}

bool implication_chain_holds(const ClassificationReport& r) {
  const auto v = [&](const char* k) { return r.verdicts.at(k).holds; };
  return (!v("killing") || v("curvature_collineation")) && (!v("curvature_collineation") || v("ricci_collineation"));
}

}  // namespace grwsym
