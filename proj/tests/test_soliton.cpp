#include <cmath>

#include "doctest.h"
#include "grwsym/catalog.hpp"
#include "grwsym/chart.hpp"
#include "grwsym/errors.hpp"
#include "grwsym/soliton.hpp"

using namespace grwsym;

namespace {

struct Setup {
  FiberEntry fiber;
  GRWSpacetime s;
  PointSet pts;
};

Setup make(FiberEntry fiber, const std::string& f, Interval dom, std::uint64_t seed = 5) {
  GRWSpacetime s = GRWSpacetime::make(fiber.metric, parse_expr(f, {"t"}), dom);
  const double w = dom.hi - dom.lo;
  SplitMix64 rng(seed);
  PointSet pts = sample_points({{dom.lo + 0.1 * w, dom.hi - 0.1 * w}, fiber.box}, 6, 4, rng);
  return {std::move(fiber), std::move(s), std::move(pts)};
}

SplitVector field(const Setup& u, const std::string& kind, FieldParams p = {}) {
  return catalog_field(kind, u.fiber, u.s.f(), p);
}

ScalarExpr amb(const Setup& u, const std::string& e) { return parse_expr(e, u.s.ambient().coords); }

const Tolerances tol;

}  // namespace

TEST_CASE("gaussian analogue on Minkowski space is a soliton with lambda = c") {
  const Setup u = make(euclidean_fiber(2), "1", {-1, 1});
  const double c = 1.5;
  const SplitVector z = field(u, "gaussian_analogue", {"", c, 0});
  CHECK(soliton_residual({u.s, z, c}, u.pts) < 1e-12);
  SUBCASE("fit recovers c") {
    const LambdaFit fit = fit_lambda(u.s, z, u.pts);
    CHECK(fit.lambda == doctest::Approx(c).epsilon(1e-12));
    CHECK(fit.residual < 1e-12);
    CHECK(fit.pointwise_stdev < 1e-12);
  }
  SUBCASE("induced fiber soliton has mu = c") {
    const auto r = induced_base_and_fiber({u.s, z, c}, u.pts, tol);
    CHECK(r.check.status == Status::Pass);
    CHECK(r.is_constant);
    for (double mu : r.mu_samples) CHECK(mu == doctest::Approx(c).epsilon(1e-12));
    CHECK(r.residual < 1e-12);
  }
  SUBCASE("sufficient conditions with sigma = rho = c, mu = 0") {
    const auto r = sufficient_conditions_soliton(u.s, z, amb(u, "1.5"), amb(u, "1.5"), 0.0, u.pts, tol);
    CHECK(r.status == Status::Pass);
    CHECK(r.values.at("lambda") == doctest::Approx(c).epsilon(1e-12));
  }
  SUBCASE("wrong mu makes the sufficient conditions vacuous") {
    const auto r = sufficient_conditions_soliton(u.s, z, amb(u, "1.5"), amb(u, "1.5"), 1.0, u.pts, tol);
    CHECK(r.status == Status::Vacuous);
  }
  SUBCASE("homothety is not 2-Killing") {
    CHECK(two_killing_soliton_props({u.s, z, c}, u.pts, tol).status == Status::Vacuous);
  }
}

TEST_CASE("property: soliton residual grows linearly in the lambda error") {
  const Setup u = make(euclidean_fiber(2), "1", {-1, 1});
  const SplitVector z = field(u, "gaussian_analogue", {"", 0.7, 0});
  SplitMix64 rng(99);
  for (int i = 0; i < 10; ++i) {
    const double d = rng.uniform(-2.0, 2.0);
    CHECK(soliton_residual({u.s, z, 0.7 + d}, u.pts) == doctest::Approx(std::abs(d)).epsilon(1e-10));
  }
}

TEST_CASE("de Sitter with Z = 0 and lambda = 3") {
  const Setup u = make(sphere_fiber(3), "cosh(t)", {-1, 1});
  const SolitonInstance inst{u.s, field(u, "zero"), 3.0};
  CHECK(soliton_residual(inst, u.pts) < 1e-10);
  SUBCASE("Killing soliton satisfies lambda = n f''/f") {
    const auto r = einstein_fiber_from_conformal_soliton(inst, u.pts, tol);
    CHECK(r.status == Status::Pass);
    CHECK(r.values.at("killing_lambda_error") < 1e-10);
    CHECK(r.values.at("killing_lambda_error_negated") == doctest::Approx(6.0).epsilon(1e-10));
    CHECK(r.values.at("einstein_residual") < 1e-10);
  }
  SUBCASE("induced fiber soliton has mu = 2") {
    const auto r = induced_base_and_fiber(inst, u.pts, tol);
    CHECK(r.check.status == Status::Pass);
    CHECK(r.check.values.at("mu") == doctest::Approx(2.0).epsilon(1e-10));
  }
  SUBCASE("Killing and Einstein, so the 2-Killing properties hold") {
    CHECK(two_killing_soliton_props(inst, u.pts, tol).status == Status::Pass);
  }
  SUBCASE("lambda is not fitted away from 3") {
    CHECK(fit_lambda(u.s, inst.field, u.pts).lambda == doctest::Approx(3.0).epsilon(1e-10));
  }
}

TEST_CASE("fit_lambda on a non-Einstein spacetime leaves a large residual") {
  const Setup u = make(euclidean_fiber(2), "cosh(t)", {-1, 1});
  const LambdaFit fit = fit_lambda(u.s, field(u, "fiber_rotation"), u.pts);
  CHECK(fit.residual > 0.1);
  CHECK(fit.pointwise_stdev > 0.01);
  SUBCASE("needs two samples") {
    CHECK_THROWS_AS(fit_lambda(u.s, field(u, "zero"), PointSet(u.pts.begin(), u.pts.begin() + 1)), PreconditionError);
  }
}

TEST_CASE("flat Killing soliton: rotation with f = 1, lambda = 0") {
  const Setup u = make(euclidean_fiber(2), "1", {-1, 1});
  const SolitonInstance inst{u.s, field(u, "fiber_rotation"), 0.0};
  const auto r = einstein_fiber_from_conformal_soliton(inst, u.pts, tol);
  CHECK(r.status == Status::Pass);
  CHECK(r.values.at("killing_lambda_error") < 1e-12);
  CHECK(r.values.at("killing_lambda_error_negated") < 1e-12);
  CHECK(r.values.at("fiber_ricci_max") < 1e-12);
  CHECK(two_killing_soliton_props(inst, u.pts, tol).status == Status::Pass);
}

TEST_CASE("regression: f = 1, Z = (t, radial), lambda = 1 pins the rho normalization") {
  const Setup u = make(euclidean_fiber(2), "1", {-1, 1});
  const SolitonInstance inst{u.s, SplitVector::make("t", {"x", "y"}, u.fiber.metric.coords), 1.0};
  const auto r = einstein_fiber_from_conformal_soliton(inst, u.pts, tol);
  CHECK(r.status == Status::Pass);
  CHECK(r.values.at("rho_mean") == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.values.at("half_rho_mean") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.values.at("lambda_relation_residual") < 1e-12);
}

TEST_CASE("einstein fiber check is vacuous off its hypotheses") {
  const Setup u = make(euclidean_fiber(2), "1", {-1, 1});
  SUBCASE("not a soliton") {
    const SolitonInstance inst{u.s, field(u, "fiber_rotation"), 1.0};
    CHECK(einstein_fiber_from_conformal_soliton(inst, u.pts, tol).status == Status::Vacuous);
  }
}

TEST_CASE("Milne patch: f = t over the hyperbolic plane, Z = t d_t, lambda = 1") {
  const Setup u = make(hyperbolic_fiber(), "t", {0.2, 2});
  const SolitonInstance inst{u.s, field(u, "comoving"), 1.0};
  CHECK(soliton_residual(inst, u.pts) < 1e-10);
  SUBCASE("einstein fiber with factor -1") {
    const auto r = einstein_fiber_from_conformal_soliton(inst, u.pts, tol);
    CHECK(r.status == Status::Pass);
    CHECK(r.values.at("rho_mean") == doctest::Approx(2.0).epsilon(1e-10));
  }
  SUBCASE("conformal from einstein with factor 2 lambda") {
    const auto r = conformal_from_einstein_soliton(inst, u.pts, tol);
    CHECK(r.status == Status::Pass);
    CHECK(r.values.at("factor_error") < 1e-10);
  }
  SUBCASE("induced fiber soliton has mu = -1") {
    const auto r = induced_base_and_fiber(inst, u.pts, tol);
    CHECK(r.check.status == Status::Pass);
    CHECK(r.check.values.at("mu") == doctest::Approx(-1.0).epsilon(1e-10));
  }
  SUBCASE("sufficient conditions with sigma = 1, rho = 0, mu = -1") {
    const auto r = sufficient_conditions_soliton(u.s, inst.field, amb(u, "1"), amb(u, "0"), -1.0, u.pts, tol);
    CHECK(r.status == Status::Pass);
    CHECK(r.values.at("lambda") == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("concircular with constant bracket, yet the fiber is not Ricci-flat") {
    const auto r = concircular_soliton_ricci_flat(inst, u.pts, tol);
    CHECK(r.status == Status::Fail);
    CHECK(r.values.at("bracket_mean") == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r.values.at("fiber_ricci_max") > 0.2);
  }
}

TEST_CASE("invariant: einstein-fiber and conformal-from-einstein agree where both apply") {
  struct Case {
    FiberEntry fiber;
    std::string f;
    Interval dom;
    std::string kind;
    double lambda;
  };
  const std::vector<Case> cases{
      {hyperbolic_fiber(), "t", {0.2, 2}, "comoving", 1.0},
      {euclidean_fiber(2), "1", {-1, 1}, "fiber_rotation", 0.0},
      {euclidean_fiber(3), "1", {-1, 1}, "gaussian_analogue", 1.0},
  };
  for (const auto& c : cases) {
    const Setup u = make(c.fiber, c.f, c.dom);
    const SolitonInstance inst{u.s, field(u, c.kind), c.lambda};
    INFO(c.fiber.id << " " << c.kind);
    const auto a = einstein_fiber_from_conformal_soliton(inst, u.pts, tol);
    const auto b = conformal_from_einstein_soliton(inst, u.pts, tol);
    if (a.status == Status::Pass && b.status == Status::Pass)
      CHECK(a.values.at("rho_mean") == doctest::Approx(b.values.at("rho_mean")).epsilon(1e-10));
    CHECK(a.status != Status::Fail);
    CHECK(b.status != Status::Fail);
  }
}
