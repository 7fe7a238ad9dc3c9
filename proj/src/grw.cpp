#include "grwsym/grw.hpp"

#include <algorithm>

#include "grwsym/errors.hpp"

namespace grwsym {

namespace {

const std::vector<std::string> kTime{"t"};

std::span<const double> fiber_of(std::span<const double> p) { return p.subspan(1); }

void require_point(const GRWSpacetime& s, std::span<const double> p) {
  if (p.size() != s.n() + 1) throw GeometryError("ambient point must have n + 1 coordinates");
}

void require_value(const GRWSpacetime& s, const SplitValue& v) {
  if (v.fiber.size() != s.n()) throw GeometryError("split value has the wrong fiber dimension");
}

double c2(const TensorValue& t, std::span<const double> x, std::span<const double> y) {
  const std::size_t n = t.dim();
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) s += t(i, j) * x[i] * y[j];
  }
  return s;
}

double c4(const TensorValue& t, std::span<const double> x, std::span<const double> y, std::span<const double> z,
          std::span<const double> w) {
  const std::size_t n = t.dim();
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (z[k] == 0.0) continue;
        for (std::size_t l = 0; l < n; ++l) s += t(i, j, k, l) * x[i] * y[j] * z[k] * w[l];
      }
    }
  }
  return s;
}

SplitValue basis(std::size_t n, std::size_t k) {
  SplitValue v{0.0, std::vector<double>(n, 0.0)};
  if (k == 0)
    v.time = 1.0;
  else
    v.fiber[k - 1] = 1.0;
  return v;
}

Jet3 time_jet(const ScalarExpr& e, double t) {
  const Jet3 slot = Jet3::variable(t);
  return e.eval(std::span<const Jet3>(&slot, 1));
}

struct CurvatureCtx {
  WarpJet w;
  TensorValue g, rm;  // fiber metric, fiber R^a_bcd
};

CurvatureCtx curvature_ctx(const GRWSpacetime& s, std::span<const double> p) {
  require_point(s, p);
  return {s.warp_at(p[0]), metric_at(s.fiber(), fiber_of(p)), riemann_mixed_at(s.fiber(), fiber_of(p))};
}

SplitValue curvature_value(const CurvatureCtx& c, const SplitValue& a, const SplitValue& b, const SplitValue& cc) {
  const std::size_t n = c.g.dim();
  const auto& [f, df, ddf, dddf] = c.w;
  const auto &X = a.fiber, &Y = b.fiber, &Z = cc.fiber;
  const double gyz = c2(c.g, Y, Z), gxz = c2(c.g, X, Z);
  SplitValue out{f * ddf * (a.time * gyz - b.time * gxz), std::vector<double>(n, 0.0)};
  for (std::size_t m = 0; m < n; ++m) {
    double r = 0;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r += c.rm(m, k, i, j) * Z[k] * X[i] * Y[j];
    out.fiber[m] = (ddf / f) * cc.time * (a.time * Y[m] - b.time * X[m]) + r + df * df * (gyz * X[m] - gxz * Y[m]);
  }
  return out;
}

double lower(const WarpJet& w, const TensorValue& g, const SplitValue& v, const SplitValue& e) {
  return -v.time * e.time + w.f * w.f * c2(g, v.fiber, e.fiber);
}

struct RicciCtx {
  WarpJet w;
  double fd = 0.0;  // f diamond
  TensorValue g, ric;
};

RicciCtx ricci_ctx(const GRWSpacetime& s, std::span<const double> p) {
  require_point(s, p);
  RicciCtx c{s.warp_at(p[0]), 0.0, metric_at(s.fiber(), fiber_of(p)), ricci_at(s.fiber(), fiber_of(p))};
  c.fd = -c.w.f * c.w.ddf - (double(s.n()) - 1.0) * c.w.df * c.w.df;
  return c;
}

double ricci_value(const RicciCtx& c, const SplitValue& a, const SplitValue& b) {
  const double n = double(c.g.dim());
  return -n * (c.w.ddf / c.w.f) * a.time * b.time + c2(c.ric, a.fiber, b.fiber) - c.fd * c2(c.g, a.fiber, b.fiber);
}

struct LieCtx {
  WarpJet w;
  double h = 0.0, dh = 0.0;
  TensorValue g, lg;  // fiber metric and L_zeta g
  TensorValue r, lr;  // fiber Riemann and its Lie derivative (curvature only)
  TensorValue ric, lric;
};

enum class LieNeeds { Metric, Curvature, Ricci };

LieCtx lie_ctx(const GRWSpacetime& s, const SplitVector& z, std::span<const double> p, LieNeeds needs) {
  require_point(s, p);
  const auto x = fiber_of(p);
  const auto& fib = s.fiber();
  LieCtx c;
  c.w = s.warp_at(p[0]);
  const Jet3 h = time_jet(z.h, p[0]);
  c.h = h.v;
  c.dh = h.d1;
  c.g = metric_at(fib, x);
  c.lg = lie_metric_at(fib, z.zeta, x);
  const bool zero_field = std::all_of(z.zeta.components.begin(), z.zeta.components.end(),
                                      [](const ScalarExpr& e) { return e.is_constant_zero(); });
  if (needs == LieNeeds::Curvature) {
    c.r = riemann_at(fib, x);
    c.lr = zero_field ? TensorValue::covariant(fib.dim(), 4)
                      : lie_tensor_at(fib, z.zeta, [&](std::span<const double> q) { return riemann_at(fib, q); }, x);
  } else if (needs == LieNeeds::Ricci) {
    c.ric = ricci_at(fib, x);
    c.lric = zero_field ? TensorValue::covariant(fib.dim(), 2)
                        : lie_tensor_at(fib, z.zeta, [&](std::span<const double> q) { return ricci_at(fib, q); }, x);
  }
  return c;
}

double lie_metric_value(const LieCtx& c, const SplitValue& a, const SplitValue& b) {
  return -2.0 * c.dh * a.time * b.time + c.w.f * c.w.f * c2(c.lg, a.fiber, b.fiber) +
         2.0 * c.h * c.w.f * c.w.df * c2(c.g, a.fiber, b.fiber);
}

double lie_curvature_value(const LieCtx& c, const SplitValue& a, const SplitValue& b, const SplitValue& cc,
                           const SplitValue& d) {
  const auto& [f, df, ddf, dddf] = c.w;
  const auto &X = a.fiber, &Y = b.fiber, &Z = cc.fiber, &W = d.fiber;
  const double k = -(c.h * df * ddf + c.h * f * dddf + 2.0 * c.dh * f * ddf);
  auto block = [&](std::span<const double> u, std::span<const double> v) {
    return k * c2(c.g, u, v) - f * ddf * c2(c.lg, u, v);
  };
  double out = 0.0;
  if (b.time != 0.0 && cc.time != 0.0) out += b.time * cc.time * block(X, W);
  if (a.time != 0.0 && cc.time != 0.0) out -= a.time * cc.time * block(Y, W);
  if (b.time != 0.0 && d.time != 0.0) out -= b.time * d.time * block(X, Z);
  if (a.time != 0.0 && d.time != 0.0) out += a.time * d.time * block(Y, Z);

  const double gyz = c2(c.g, Y, Z), gxw = c2(c.g, X, W), gxz = c2(c.g, X, Z), gyw = c2(c.g, Y, W);
  const double G = gyz * gxw - gxz * gyw;
  const double LG = c2(c.lg, Y, Z) * gxw + gyz * c2(c.lg, X, W) - c2(c.lg, X, Z) * gyw - gxz * c2(c.lg, Y, W);
  const double hff = 2.0 * c.h * f * df;
  out += f * f * c4(c.lr, X, Y, Z, W) + hff * c4(c.r, X, Y, Z, W) + hff * (df * df + f * ddf) * G + f * f * df * df * LG;
  return out;
}

double lie_ricci_value(const LieCtx& c, const SplitValue& a, const SplitValue& b) {
  const auto& [f, df, ddf, dddf] = c.w;
  const double n = double(c.g.dim());
  const double fdiamond = -f * ddf - (n - 1.0) * df * df;
  const double time = -(n / (f * f)) * (c.h * f * dddf - c.h * df * ddf + 2.0 * c.dh * f * ddf);
  return a.time * b.time * time + c.h * (f * dddf + (2.0 * n - 1.0) * df * ddf) * c2(c.g, a.fiber, b.fiber) +
         c2(c.lric, a.fiber, b.fiber) - fdiamond * c2(c.lg, a.fiber, b.fiber);
}

std::vector<SplitValue> ambient_basis(std::size_t n) {
  std::vector<SplitValue> e;
  for (std::size_t k = 0; k <= n; ++k) e.push_back(basis(n, k));
  return e;
}

}  // namespace

GRWSpacetime GRWSpacetime::make(MetricField fiber, ScalarExpr f, Interval t_domain) {
  if (fiber.dim() == 0) throw GeometryError("fiber must have at least one dimension");
  if (std::find(fiber.coords.begin(), fiber.coords.end(), "t") != fiber.coords.end())
    throw GeometryError("fiber coordinates may not use the name 't'");
  if (std::any_of(fiber.signature.begin(), fiber.signature.end(), [](int s) { return s != 1; }))
    throw GeometryError("fiber metric must be Riemannian");
  if (!(t_domain.lo < t_domain.hi)) throw GeometryError("empty time domain");

  GRWSpacetime s;
  s.f_ = f.rebind(kTime);
  std::vector<std::string> coords{"t"};
  coords.insert(coords.end(), fiber.coords.begin(), fiber.coords.end());
  const std::size_t n = fiber.dim();
  MetricField amb;
  amb.coords = coords;
  amb.signature.assign(n + 1, 1);
  amb.signature[0] = -1;
  amb.components.assign(n + 1, std::vector<ScalarExpr>(n + 1, ScalarExpr::constant(0.0, coords)));
  amb.components[0][0] = ScalarExpr::constant(-1.0, coords);
  const ScalarExpr f2 = pow(s.f_.rebind(coords), 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const ScalarExpr& gij = fiber.components[i][j];
      amb.components[i + 1][j + 1] = gij.is_constant_zero() ? ScalarExpr::constant(0.0, coords) : f2 * gij.rebind(coords);
    }
  s.fiber_ = std::move(fiber);
  s.t_domain_ = t_domain;
  s.ambient_ = std::move(amb);
  return s;
}

WarpJet GRWSpacetime::warp_at(double t) const {
  if (!t_domain_.contains(t)) throw PreconditionError("t = " + std::to_string(t) + " is outside the time domain");
  const Jet3 j = time_jet(f_, t);
  if (!(j.v > 0.0)) throw DomainError("warping function is not positive", f_.to_string());
  return {j.v, j.d1, j.d2, j.d3};
}

SplitVector SplitVector::make(const std::string& h, const std::vector<std::string>& zeta,
                              const std::vector<std::string>& fiber_coords) {
  return from(parse_expr(h, kTime), VectorFieldSpec::from_strings(zeta, fiber_coords), fiber_coords);
}

SplitVector SplitVector::from(ScalarExpr h, VectorFieldSpec zeta, const std::vector<std::string>& fiber_coords) {
  if (zeta.dim() != fiber_coords.size()) throw GeometryError("fiber field needs one component per fiber coordinate");
  SplitVector v{h.rebind(kTime), {}};
  for (const auto& c : zeta.components) v.zeta.components.push_back(c.rebind(fiber_coords));
  return v;
}

VectorFieldSpec SplitVector::ambient(const GRWSpacetime& s) const {
  const auto& coords = s.ambient().coords;
  VectorFieldSpec v;
  v.components.push_back(h.rebind(coords));
  for (const auto& c : zeta.components) v.components.push_back(c.rebind(coords));
  return v;
}

SplitVector operator+(const SplitVector& a, const SplitVector& b) {
  if (a.zeta.dim() != b.zeta.dim()) throw GeometryError("split fields over different fibers");
  SplitVector v{a.h + b.h, {}};
  for (std::size_t i = 0; i < a.zeta.dim(); ++i) v.zeta.components.push_back(a.zeta.components[i] + b.zeta.components[i]);
  return v;
}

std::vector<double> SplitValue::ambient() const {
  std::vector<double> v{time};
  v.insert(v.end(), fiber.begin(), fiber.end());
  return v;
}

SplitValue split_at(const SplitVector& v, std::span<const double> p) {
  const double t = p[0];
  return {v.h.eval(std::span<const double>(&t, 1)), field_at(v.zeta, fiber_of(p))};
}

SplitValue split_value(std::span<const double> ambient_vector) {
  if (ambient_vector.empty()) throw GeometryError("empty ambient vector");
  return {ambient_vector[0], std::vector<double>(ambient_vector.begin() + 1, ambient_vector.end())};
}

double f_diamond(const GRWSpacetime& s, double t) {
  const WarpJet w = s.warp_at(t);
  return -w.f * w.ddf - (double(s.n()) - 1.0) * w.df * w.df;
}

double grw_inner(const GRWSpacetime& s, const SplitValue& a, const SplitValue& b, std::span<const double> p) {
  require_point(s, p);
  require_value(s, a);
  require_value(s, b);
  return lower(s.warp_at(p[0]), metric_at(s.fiber(), fiber_of(p)), a, b);
}

SplitValue grw_connection(const GRWSpacetime& s, const SplitVector& a, const SplitVector& b, std::span<const double> p) {
  const TensorValue c = grw_connection_tensor(s, b, p);
  const std::vector<double> av = split_at(a, p).ambient();
  std::vector<double> out(s.n() + 1, 0.0);
  for (std::size_t i = 0; i <= s.n(); ++i)
    for (std::size_t j = 0; j <= s.n(); ++j) out[j] += av[i] * c(i, j);
  return split_value(out);
}

SplitValue grw_curvature(const GRWSpacetime& s, const SplitValue& a, const SplitValue& b, const SplitValue& c,
                         std::span<const double> p) {
  for (const auto* v : {&a, &b, &c}) require_value(s, *v);
  return curvature_value(curvature_ctx(s, p), a, b, c);
}

double grw_ricci(const GRWSpacetime& s, const SplitValue& a, const SplitValue& b, std::span<const double> p) {
  require_value(s, a);
  require_value(s, b);
  return ricci_value(ricci_ctx(s, p), a, b);
}

double grw_lie_metric(const GRWSpacetime& s, const SplitVector& z, const SplitValue& a, const SplitValue& b,
                      std::span<const double> p) {
  require_value(s, a);
  require_value(s, b);
  return lie_metric_value(lie_ctx(s, z, p, LieNeeds::Metric), a, b);
}

double grw_lie_curvature(const GRWSpacetime& s, const SplitVector& z, const SplitValue& a, const SplitValue& b,
                         const SplitValue& c, const SplitValue& d, std::span<const double> p) {
  for (const auto* v : {&a, &b, &c, &d}) require_value(s, *v);
  return lie_curvature_value(lie_ctx(s, z, p, LieNeeds::Curvature), a, b, c, d);
}

double grw_lie_ricci(const GRWSpacetime& s, const SplitVector& z, const SplitValue& a, const SplitValue& b,
                     std::span<const double> p) {
  require_value(s, a);
  require_value(s, b);
  return lie_ricci_value(lie_ctx(s, z, p, LieNeeds::Ricci), a, b);
}

TensorValue grw_connection_tensor(const GRWSpacetime& s, const SplitVector& b, std::span<const double> p) {
  require_point(s, p);
  const std::size_t n = s.n();
  const auto x = fiber_of(p);
  const WarpJet w = s.warp_at(p[0]);
  const TensorValue g = metric_at(s.fiber(), x);
  const TensorValue dy = cov_deriv_vector_at(s.fiber(), b.zeta, x);
  const Jet3 bj = time_jet(b.h, p[0]);
  const std::vector<double> y = field_at(b.zeta, x);

  TensorValue out(n + 1, {Variance::Lower, Variance::Upper});
  out(0, 0) = bj.d1;
  for (std::size_t j = 0; j < n; ++j) out(0, j + 1) = (w.df / w.f) * y[j];
  for (std::size_t i = 0; i < n; ++i) {
    double gy = 0;
    for (std::size_t m = 0; m < n; ++m) gy += g(i, m) * y[m];
    out(i + 1, 0) = w.f * w.df * gy;
    for (std::size_t j = 0; j < n; ++j) out(i + 1, j + 1) = dy(i, j) + (i == j ? (w.df / w.f) * bj.v : 0.0);
  }
  return out;
}

TensorValue grw_curvature_tensor(const GRWSpacetime& s, std::span<const double> p) {
  const CurvatureCtx c = curvature_ctx(s, p);
  const std::size_t d = s.n() + 1;
  const auto e = ambient_basis(s.n());
  TensorValue out = TensorValue::covariant(d, 4);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const SplitValue r = curvature_value(c, e[i], e[j], e[k]);
        for (std::size_t l = 0; l < d; ++l) out(i, j, k, l) = lower(c.w, c.g, r, e[l]);
      }
  return out;
}

TensorValue grw_ricci_tensor(const GRWSpacetime& s, std::span<const double> p) {
  const RicciCtx c = ricci_ctx(s, p);
  const std::size_t d = s.n() + 1;
  const auto e = ambient_basis(s.n());
  TensorValue out = TensorValue::covariant(d, 2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = ricci_value(c, e[i], e[j]);
  return out;
}

TensorValue grw_lie_metric_tensor(const GRWSpacetime& s, const SplitVector& z, std::span<const double> p) {
  const LieCtx c = lie_ctx(s, z, p, LieNeeds::Metric);
  const std::size_t d = s.n() + 1;
  const auto e = ambient_basis(s.n());
  TensorValue out = TensorValue::covariant(d, 2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = lie_metric_value(c, e[i], e[j]);
  return out;
}

TensorValue grw_lie_curvature_tensor(const GRWSpacetime& s, const SplitVector& z, std::span<const double> p) {
  const LieCtx c = lie_ctx(s, z, p, LieNeeds::Curvature);
  const std::size_t d = s.n() + 1;
  const auto e = ambient_basis(s.n());
  TensorValue out = TensorValue::covariant(d, 4);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) out(i, j, k, l) = lie_curvature_value(c, e[i], e[j], e[k], e[l]);
  return out;
}

TensorValue grw_lie_ricci_tensor(const GRWSpacetime& s, const SplitVector& z, std::span<const double> p) {
  const LieCtx c = lie_ctx(s, z, p, LieNeeds::Ricci);
  const std::size_t d = s.n() + 1;
  const auto e = ambient_basis(s.n());
  TensorValue out = TensorValue::covariant(d, 2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = lie_ricci_value(c, e[i], e[j]);
  return out;
}

}  // namespace grwsym
