#include "grwsym/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "grwsym/errors.hpp"
#include "grwsym/scenario.hpp"

namespace grwsym {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

/// Parenthesized so that negative values survive substitution.
std::string lit(double v) { return "(" + num(v) + ")"; }

Interval polar_angle(const Margins& m) { return {m.theta, std::numbers::pi - m.theta}; }

// A non-symmetric test field on any fiber: zeta^i = 0.2 c_{i+1}^2 + sin(c_i) / 2.
SplitVector generic_field(const FiberEntry& fiber) {
  const auto& c = fiber.metric.coords;
  std::vector<std::string> comps;
  for (std::size_t i = 0; i < c.size(); ++i)
    comps.push_back("0.2*" + c[(i + 1) % c.size()] + "^2 + sin(" + c[i] + ")/2");
  return SplitVector::make("cos(t) + 0.1*t^2", comps, c);
}

}  // namespace

FiberEntry euclidean_fiber(int n) {
  if (n < 1 || n > 3) throw PreconditionError("euclidean fiber supports n = 1, 2, 3");
  std::vector<std::string> c{"x", "y", "z"};
  c.resize(std::size_t(n));
  FiberEntry e{"euclidean(" + std::to_string(n) + ")", "euclidean", "flat R^" + std::to_string(n),
               MetricField::diagonal(c, std::vector<std::string>(std::size_t(n), "1"), std::vector<int>(std::size_t(n), 1)),
               std::vector<Interval>(std::size_t(n), Interval{-1.0, 1.0})};
  return e;
}

FiberEntry sphere_fiber(int n, double radius, const Margins& m) {
  if (!(radius > 0)) throw PreconditionError("sphere radius must be positive");
  const std::string r2 = lit(radius * radius);
  FiberEntry e;
  e.kind = "sphere";
  e.id = "sphere(" + std::to_string(n) + ", " + num(radius) + ")";
  e.description = "round " + std::to_string(n) + "-sphere of radius " + num(radius);
  if (n == 2) {
    e.metric = MetricField::diagonal({"th", "ph"}, {r2, r2 + "*sin(th)^2"}, {1, 1});
    e.box = {polar_angle(m), {0.0, 2 * std::numbers::pi}};
  } else if (n == 3) {
    e.metric = MetricField::diagonal({"chi", "th", "ph"}, {r2, r2 + "*sin(chi)^2", r2 + "*sin(chi)^2*sin(th)^2"}, {1, 1, 1});
    e.box = {polar_angle(m), polar_angle(m), {0.0, 2 * std::numbers::pi}};
  } else {
    throw PreconditionError("sphere fiber supports n = 2, 3");
  }
  return e;
}

FiberEntry hyperbolic_fiber(const Margins&) {
  return {"hyperbolic(2)", "hyperbolic", "upper half-plane with curvature -1",
          MetricField::diagonal({"x", "y"}, {"1/y^2", "1/y^2"}, {1, 1}), {{-1.0, 1.0}, {0.5, 2.0}}};
}

FiberEntry frw_spatial_fiber(double k, const Margins& m) {
  const double rmax = k > 0 ? 0.9 / std::sqrt(k) : 0.9;
  return {"frw_spatial(" + num(k) + ")", "frw_spatial", "FRW spatial slice with curvature index " + num(k),
          MetricField::diagonal({"r", "th", "ph"}, {"1/(1 - " + lit(k) + "*r^2)", "r^2", "r^2*sin(th)^2"}, {1, 1, 1}),
          {{m.radius, rmax}, polar_angle(m), {0.0, 2 * std::numbers::pi}}};
}

FiberEntry catalog_fiber(const std::string& kind, int n, double param, const Margins& m) {
  if (kind == "euclidean") return euclidean_fiber(n);
  if (kind == "sphere") return sphere_fiber(n, param, m);
  if (kind == "hyperbolic") {
    if (n != 2) throw PreconditionError("hyperbolic fiber supports n = 2");
    return hyperbolic_fiber(m);
  }
  if (kind == "frw_spatial") {
    if (n != 3) throw PreconditionError("frw_spatial fiber has n = 3");
    return frw_spatial_fiber(param, m);
  }
  throw PreconditionError("unknown fiber '" + kind + "'");
}

ScalarExpr catalog_warping(const std::string& kind, double a, double b, double p) {
  const std::vector<std::string> t{"t"};
  if (kind == "one") return parse_expr("1", t);
  if (kind == "linear") return parse_expr(lit(a) + "*t + " + lit(b), t);
  if (kind == "exp") return parse_expr("exp(t)", t);
  if (kind == "cosh") return parse_expr("cosh(t)", t);
  if (kind == "power") return parse_expr("t^" + lit(p), t);
  throw PreconditionError("unknown warping '" + kind + "'");
}

SplitVector catalog_field(const std::string& kind, const FiberEntry& fiber, const ScalarExpr& f,
                          const FieldParams& params) {
  const auto& c = fiber.metric.coords;
  const std::size_t n = c.size();
  const auto zero = std::vector<std::string>(n, "0");
  auto radial = [&]() -> std::vector<std::string> {
    if (fiber.kind == "euclidean" || fiber.kind == "hyperbolic") return c;
    if (fiber.kind == "frw_spatial") return {"r", "0", "0"};
    throw PreconditionError("fiber " + fiber.id + " has no radial field");
  };
  if (kind == "zero") return SplitVector::make("0", zero, c);
  if (kind == "dt_scaled") {
    if (params.h.empty()) throw PreconditionError("dt_scaled needs h");
    return SplitVector::make(params.h, zero, c);
  }
  if (kind == "comoving") return SplitVector::from(f, VectorFieldSpec::zero(c), c);
  if (kind == "fiber_translation") {
    if (fiber.kind != "euclidean" && !(fiber.kind == "hyperbolic" && params.index == 0))
      throw PreconditionError("fiber " + fiber.id + " has no translation field");
    if (params.index < 0 || std::size_t(params.index) >= n) throw PreconditionError("translation index out of range");
    auto comps = zero;
    comps[std::size_t(params.index)] = "1";
    return SplitVector::make("0", comps, c);
  }
  if (kind == "fiber_rotation") {
    auto comps = zero;
    if (fiber.kind == "euclidean" && n >= 2) {
      comps[0] = "-y";
      comps[1] = "x";
    } else if (fiber.kind == "sphere" || fiber.kind == "frw_spatial") {
      comps[n - 1] = "1";
    } else {
      throw PreconditionError("fiber " + fiber.id + " has no rotation field");
    }
    return SplitVector::make("0", comps, c);
  }
  if (kind == "fiber_radial") return SplitVector::make("0", radial(), c);
  if (kind == "gaussian_analogue") {
    auto comps = radial();
    for (auto& s : comps)
      if (s != "0") s = lit(params.c) + "*" + s;
    return SplitVector::make(lit(params.c) + "*t", comps, c);
  }
  throw PreconditionError("unknown field '" + kind + "'");
}

std::vector<CatalogListing> catalog_listing() {
  std::vector<CatalogListing> out{
      {"euclidean(n)", "fiber", "flat R^n, n = 2, 3; coordinates x y z"},
      {"sphere(n, radius)", "fiber", "round sphere, n = 2 (th ph) or 3 (chi th ph)"},
      {"hyperbolic(2)", "fiber", "upper half-plane (dx^2 + dy^2)/y^2"},
      {"frw_spatial(k)", "fiber", "dr^2/(1 - k r^2) + r^2 dOmega^2, k in {-1, 0, 1}"},
      {"one", "warping", "f = 1"},
      {"linear(a, b)", "warping", "f = a t + b"},
      {"exp", "warping", "f = e^t"},
      {"cosh", "warping", "f = cosh t"},
      {"power(p)", "warping", "f = t^p"},
      {"zero", "field", "Z = 0"},
      {"dt_scaled(h)", "field", "Z = h(t) d_t"},
      {"fiber_translation(i)", "field", "Z = d_{x_i} on a flat or half-plane fiber"},
      {"fiber_rotation", "field", "rotation -y d_x + x d_y, or d_ph on spherical charts"},
      {"fiber_radial", "field", "position field (dilation on the half-plane, r d_r on frw)"},
      {"comoving", "field", "Z = f d_t"},
      {"gaussian_analogue(c)", "field", "Z = c t d_t + c * radial"},
  };
  for (const auto& s : catalog_scenarios()) {
    out.push_back({s.at("name").get<std::string>(), "scenario", s.value("description", "")});
  }
  return out;
}

std::vector<OracleCombo> oracle_combinations() {
  struct Spec {
    FiberEntry fiber;
    ScalarExpr f;
    Interval domain;
  };
  const std::vector<Spec> specs{
      {euclidean_fiber(2), catalog_warping("one"), {-1.0, 2.0}},
      {euclidean_fiber(2), catalog_warping("linear", 2.0, 1.0), {0.0, 2.0}},
      {euclidean_fiber(3), catalog_warping("exp"), {-1.0, 2.0}},
      {sphere_fiber(2), catalog_warping("cosh"), {-1.0, 2.0}},
      {sphere_fiber(2, 2.0), catalog_warping("exp"), {-1.0, 2.0}},
      {sphere_fiber(3), catalog_warping("power", 1.0, 0.0, 1.5), {0.2, 2.0}},
      {hyperbolic_fiber(), catalog_warping("linear", 1.0, 0.0), {0.2, 2.0}},
      {frw_spatial_fiber(1.0), catalog_warping("exp"), {-1.0, 2.0}},
      {frw_spatial_fiber(0.0), catalog_warping("power", 1.0, 0.0, 2.0 / 3.0), {0.2, 2.0}},
      {frw_spatial_fiber(-1.0), catalog_warping("cosh"), {-1.0, 2.0}},
  };
  std::vector<OracleCombo> out;
  for (const auto& s : specs) {
    const double w = s.domain.hi - s.domain.lo;
    OracleCombo c{s.fiber.id + " x f = " + s.f.to_string(),
                  GRWSpacetime::make(s.fiber.metric, s.f, s.domain),
                  {{s.domain.lo + 0.1 * w, s.domain.hi - 0.1 * w}, s.fiber.box},
                  {}};
    c.fields.emplace_back("generic", generic_field(s.fiber));
    c.fields.emplace_back("comoving", catalog_field("comoving", s.fiber, s.f));
    if (s.fiber.kind != "hyperbolic") c.fields.emplace_back("fiber_rotation", catalog_field("fiber_rotation", s.fiber, s.f));
    if (s.fiber.kind != "sphere") c.fields.emplace_back("fiber_radial", catalog_field("fiber_radial", s.fiber, s.f));
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace grwsym
