#pragma once

#include <string>
#include <vector>

#include "grwsym/grw.hpp"
#include "grwsym/sampling.hpp"

namespace grwsym {

/// Distance kept from coordinate singularities when sampling.
struct Margins {
  double theta = 0.2;   // polar angles stay in [theta, pi - theta]
  double radius = 0.1;  // radial coordinates stay >= radius
};

struct FiberEntry {
  std::string id;    // e.g. "sphere(2, 1)"
  std::string kind;  // euclidean | sphere | hyperbolic | frw_spatial
  std::string description;
  MetricField metric;
  std::vector<Interval> box;  // default sampling box per coordinate
};

FiberEntry euclidean_fiber(int n);
FiberEntry sphere_fiber(int n, double radius = 1.0, const Margins& m = {});
/// Upper half-plane, g = (dx^2 + dy^2) / y^2.
FiberEntry hyperbolic_fiber(const Margins& m = {});
/// dr^2 / (1 - k r^2) + r^2 dOmega^2 in coordinates (r, th, ph).
FiberEntry frw_spatial_fiber(double k, const Margins& m = {});

/// kind in {euclidean, sphere, hyperbolic, frw_spatial}; `param` is the
/// sphere radius or the frw curvature k.
FiberEntry catalog_fiber(const std::string& kind, int n, double param, const Margins& m = {});

/// kind in {one, linear, exp, cosh, power}: 1, a t + b, e^t, cosh t, t^p.
ScalarExpr catalog_warping(const std::string& kind, double a = 1.0, double b = 0.0, double p = 1.0);

struct FieldParams {
  std::string h;   // dt_scaled
  double c = 1.0;  // gaussian_analogue
  int index = 0;   // fiber_translation
};

/// kind in {zero, dt_scaled, fiber_translation, fiber_rotation, fiber_radial,
/// comoving, gaussian_analogue}. Throws PreconditionError when the fiber
/// has no such field.
SplitVector catalog_field(const std::string& kind, const FiberEntry& fiber, const ScalarExpr& f,
                          const FieldParams& params = {});

struct CatalogListing {
  std::string id;
  std::string kind;  // fiber | warping | field | scenario
  std::string description;
};

std::vector<CatalogListing> catalog_listing();

/// Fiber x warping combinations with test fields, for oracle sweeps.
struct OracleCombo {
  std::string id;
  GRWSpacetime spacetime;
  SampleRegion region;
  std::vector<std::pair<std::string, SplitVector>> fields;
};

std::vector<OracleCombo> oracle_combinations();

}  // namespace grwsym
