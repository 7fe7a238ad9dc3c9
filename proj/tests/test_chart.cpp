#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "grwsym/chart.hpp"
#include "grwsym/errors.hpp"

using namespace grwsym;
using std::numbers::pi;

namespace {

MetricField euclid(std::size_t n) {
  std::vector<std::string> c{"x", "y", "z"};
  c.resize(n);
  return MetricField::diagonal(c, std::vector<std::string>(n, "1"), std::vector<int>(n, 1));
}
MetricField sphere2(double radius = 1.0) {
  const std::string r2 = std::to_string(radius * radius);
  return MetricField::diagonal({"th", "ph"}, {r2, r2 + "*sin(th)^2"}, {1, 1});
}
MetricField sphere3() { return MetricField::diagonal({"chi", "th", "ph"}, {"1", "sin(chi)^2", "sin(chi)^2*sin(th)^2"}, {1, 1, 1}); }
MetricField polar() { return MetricField::diagonal({"r", "th"}, {"1", "r^2"}, {1, 1}); }
MetricField hyperbolic() { return MetricField::diagonal({"x", "y"}, {"1/y^2", "1/y^2"}, {1, 1}); }
MetricField grw_exp_flat2() { return MetricField::diagonal({"t", "x", "y"}, {"-1", "exp(t)^2", "exp(t)^2"}, {-1, 1, 1}); }
MetricField grw_exp_flat3() {
  return MetricField::diagonal({"t", "x", "y", "z"}, {"-1", "exp(t)^2", "exp(t)^2", "exp(t)^2"}, {-1, 1, 1, 1});
}
MetricField grw_cosh_sphere() { return MetricField::diagonal({"t", "th", "ph"}, {"-1", "cosh(t)^2", "cosh(t)^2*sin(th)^2"}, {-1, 1, 1}); }
MetricField frw_closed() {
  return MetricField::diagonal({"t", "r", "th", "ph"}, {"-1", "t^2/(1-r^2)", "t^2*r^2", "t^2*r^2*sin(th)^2"}, {-1, 1, 1, 1});
}
MetricField skew_metric() {
  // non-diagonal Riemannian metric to exercise off-diagonal code paths
  return MetricField::from_strings({"x", "y"}, {{"2 + sin(x)", "0.3*cos(y)"}, {"0.3*cos(y)", "1 + x^2"}}, {1, 1});
}

std::vector<double> pt(std::initializer_list<double> v) { return v; }

}  // namespace

TEST_CASE("metric_at") {
  const auto e = metric_at(euclid(3), pt({0.3, -2.0, 5.0}));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(e(i, j) == (i == j ? 1.0 : 0.0));
  const auto s = metric_at(sphere2(), pt({pi / 2, 0.7}));
  CHECK(s(0, 0) == doctest::Approx(1.0));
  CHECK(s(1, 1) == doctest::Approx(1.0));
  const auto g = metric_at(grw_exp_flat2(), pt({0.0, 0.1, 0.2}));
  CHECK(g(0, 0) == -1.0);
  CHECK(g(1, 1) == 1.0);
  CHECK(g(2, 2) == 1.0);

  // declared Riemannian but Lorentzian values
  auto bad = MetricField::diagonal({"t", "x"}, {"-1", "1"}, {1, 1});
  CHECK_THROWS_AS(metric_at(bad, pt({0, 0})), GeometryError);
  auto singular = MetricField::diagonal({"x", "y"}, {"1", "x"}, {1, 1});
  CHECK_THROWS_AS(metric_at(singular, pt({0, 0})), GeometryError);
  auto asym = MetricField::from_strings({"x", "y"}, {{"1", "0.1"}, {"0.2", "1"}}, {1, 1});
  CHECK_THROWS_AS(metric_at(asym, pt({0, 0})), GeometryError);
  CHECK_THROWS_AS(metric_at(hyperbolic(), pt({0.0, 0.0})), DomainError);
}

TEST_CASE("christoffel_at") {
  const auto z = christoffel_at(euclid(3), pt({1, 2, 3}));
  CHECK(z.max_abs() == 0.0);

  const auto p = christoffel_at(polar(), pt({2.0, 0.3}));
  CHECK(p(0, 1, 1) == doctest::Approx(-2.0));
  CHECK(p(1, 0, 1) == doctest::Approx(0.5));
  CHECK(p(1, 1, 0) == doctest::Approx(0.5));

  const auto s = christoffel_at(sphere2(), pt({pi / 4, 1.0}));
  CHECK(s(0, 1, 1) == doctest::Approx(-0.5));
  CHECK(s(1, 0, 1) == doctest::Approx(1.0));  // cot(pi/4)
}

TEST_CASE("christoffel_at agrees with finite differences of the metric") {
  for (const auto& m : {polar(), skew_metric(), sphere2(2.0), hyperbolic()}) {
    const auto p = pt({0.9, 0.7});
    const auto gamma = christoffel_at(m, p);
    const auto ginv = inverse_metric_at(m, p);
    const double h = 1e-5;
    std::vector<TensorValue> dg;
    for (std::size_t k = 0; k < 2; ++k) {
      auto a = p, b = p;
      a[k] += h;
      b[k] -= h;
      dg.push_back((1.0 / (2 * h)) * (metric_at(m, a) - metric_at(m, b)));
    }
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          double s = 0;
          for (std::size_t l = 0; l < 2; ++l) s += 0.5 * ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
          CHECK(std::abs(gamma(k, i, j) - s) < 1e-8);
          CHECK(std::abs(gamma(k, i, j) - gamma(k, j, i)) < 1e-10);
        }
  }
}

TEST_CASE("riemann_at and ricci_at known values") {
  CHECK(riemann_at(euclid(3), pt({0.1, 0.2, 0.3})).max_abs() == 0.0);
  CHECK(riemann_at(polar(), pt({1.3, 0.2})).max_abs() < 1e-12);
  const auto minkowski = MetricField::diagonal({"t", "x", "y"}, {"-1", "1^2", "1^2"}, {-1, 1, 1});
  CHECK(riemann_at(minkowski, pt({0.5, 0.1, 0.2})).max_abs() == 0.0);
  CHECK(ricci_at(minkowski, pt({0.5, 0.1, 0.2})).max_abs() == 0.0);

  for (double th : {0.4, 1.0, 2.2}) {
    const auto r = riemann_at(sphere2(), pt({th, 0.3}));
    CHECK(std::abs(r(0, 1, 0, 1)) == doctest::Approx(std::sin(th) * std::sin(th)));
    // this convention: R(X,Y,Y,X) > 0 on the sphere
    CHECK(r(0, 1, 1, 0) == doctest::Approx(std::sin(th) * std::sin(th)));
  }

  const auto p2 = pt({0.8, 0.4});
  const auto ric2 = ricci_at(sphere2(), p2);
  const auto g2 = metric_at(sphere2(), p2);
  CHECK(max_abs_diff(ric2, g2) < 1e-10);
  const auto p3 = pt({0.9, 1.1, 0.3});
  CHECK(max_abs_diff(ricci_at(sphere3(), p3), 2.0 * metric_at(sphere3(), p3)) < 1e-10);
  CHECK(scalar_curvature_at(sphere3(), p3) == doctest::Approx(6.0));
  CHECK(scalar_curvature_at(hyperbolic(), pt({0.3, 0.8})) == doctest::Approx(-2.0));
  // sphere of radius 2: Ric = g/4 * (n-1) in metric terms, i.e. Ric_ij = (1/4) g_ij * ... = (n-1)/R^2 g
  CHECK(max_abs_diff(ricci_at(sphere2(2.0), p2), 0.25 * metric_at(sphere2(2.0), p2)) < 1e-10);

  // n = 3, f = e^t, flat fiber: Ric(dt, dt) = -n f''/f = -3 in the coordinate convention (de Sitter, Ric = 3 g)
  for (double t : {-0.5, 0.0, 0.7}) {
    const auto p = pt({t, 0.1, 0.2, 0.3});
    const auto ric = ricci_at(grw_exp_flat3(), p);
    CHECK(ric(0, 0) == doctest::Approx(-3.0));
    CHECK(max_abs_diff(ric, 3.0 * metric_at(grw_exp_flat3(), p)) < 1e-9);
  }
}

TEST_CASE("property: Riemann symmetries, Bianchi identity and Ricci contraction") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.3, 0.9);
  const std::vector<MetricField> metrics{sphere2(), sphere3(), polar(), hyperbolic(), skew_metric(), grw_exp_flat2(),
                                         grw_cosh_sphere(), frw_closed()};
  for (const auto& m : metrics) {
    for (int s = 0; s < 10; ++s) {
      std::vector<double> p(m.dim());
      for (auto& c : p) c = u(rng);
      const auto r = riemann_at(m, p);
      const auto ric = ricci_at(m, p);
      const auto ginv = inverse_metric_at(m, p);
      const std::size_t n = m.dim();
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l) {
              worst = std::max(worst, std::abs(r(i, j, k, l) + r(j, i, k, l)));
              worst = std::max(worst, std::abs(r(i, j, k, l) + r(i, j, l, k)));
              worst = std::max(worst, std::abs(r(i, j, k, l) - r(k, l, i, j)));
              worst = std::max(worst, std::abs(r(i, j, k, l) + r(j, k, i, l) + r(k, i, j, l)));
            }
      CHECK(worst < 1e-8);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          double c = 0;
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) c += ginv(i, l) * r(i, j, k, l);
          CHECK(std::abs(c - ric(j, k)) < 1e-8);
          CHECK(std::abs(ric(j, k) - ric(k, j)) < 1e-8);
        }
      // bit-identical on repeat
      const auto again = riemann_at(m, p);
      CHECK(std::equal(again.entries().begin(), again.entries().end(), r.entries().begin()));
    }
  }
}

TEST_CASE("cov_deriv_vector_at and lie_metric_at") {
  const auto c = cov_deriv_vector_at(euclid(2), VectorFieldSpec::from_strings({"3", "-1"}, {"x", "y"}), pt({0.2, 0.5}));
  CHECK(c.max_abs() == 0.0);
  const auto radial = VectorFieldSpec::from_strings({"x", "y", "z"}, {"x", "y", "z"});
  const auto rd = cov_deriv_vector_at(euclid(3), radial, pt({0.2, 0.5, -1.0}));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(rd(i, j) == (i == j ? 1.0 : 0.0));
  const auto rot = cov_deriv_vector_at(euclid(2), VectorFieldSpec::from_strings({"-y", "x"}, {"x", "y"}), pt({0.2, 0.5}));
  CHECK(rot(0, 0) == 0.0);
  CHECK(rot(0, 1) == 1.0);
  CHECK(rot(1, 0) == -1.0);
  CHECK(rot(1, 1) == 0.0);

  const auto sphere_rot = VectorFieldSpec::from_strings({"0", "1"}, {"th", "ph"});
  CHECK(lie_metric_at(sphere2(), sphere_rot, pt({0.7, 0.1})).max_abs() < 1e-8);
  // rotation about the x axis: (-sin ph, -cot th cos ph)
  const auto sphere_rot_x = VectorFieldSpec::from_strings({"-sin(ph)", "-cos(th)/sin(th)*cos(ph)"}, {"th", "ph"});
  CHECK(lie_metric_at(sphere2(), sphere_rot_x, pt({0.7, 0.9})).max_abs() < 1e-8);
  const auto p = pt({0.2, 0.5, -1.0});
  CHECK(max_abs_diff(lie_metric_at(euclid(3), radial, p), 2.0 * metric_at(euclid(3), p)) < 1e-12);
  CHECK(lie_metric_at(sphere2(), VectorFieldSpec::zero({"th", "ph"}), pt({0.7, 0.1})).max_abs() == 0.0);
}

TEST_CASE("lie_tensor_at") {
  const auto m = sphere2();
  const auto p = pt({0.9, 0.4});
  const auto field = VectorFieldSpec::from_strings({"sin(ph)*th", "cos(th) + ph^2"}, {"th", "ph"});
  const TensorFieldFn metric_fn = [&](std::span<const double> q) { return metric_at(m, q); };
  CHECK(max_abs_diff(lie_tensor_at(m, field, metric_fn, p), lie_metric_at(m, field, p)) < 1e-6);

  const auto killing = VectorFieldSpec::from_strings({"-sin(ph)", "-cos(th)/sin(th)*cos(ph)"}, {"th", "ph"});
  const TensorFieldFn riem = [&](std::span<const double> q) { return riemann_at(m, q); };
  CHECK(lie_tensor_at(m, killing, riem, p).max_abs() < 1e-6);
  CHECK(lie_tensor_at(m, field, riem, p).max_abs() > 1e-2);
  CHECK(lie_tensor_at(m, VectorFieldSpec::zero(m.coords), riem, p).max_abs() == 0.0);
}

TEST_CASE("hessian_at and laplacian_at") {
  const auto p = pt({0.3, -0.7, 1.1});
  CHECK(hessian_at(euclid(3), parse_expr("2*x - 3*y + z + 4", {"x", "y", "z"}), p).max_abs() == 0.0);
  const auto half_sq = parse_expr("0.5*(x^2 + y^2 + z^2)", {"x", "y", "z"});
  CHECK(max_abs_diff(hessian_at(euclid(3), half_sq, p), metric_at(euclid(3), p)) < 1e-14);
  CHECK(laplacian_at(euclid(3), half_sq, p) == doctest::Approx(3.0));
  // same function in polar coordinates: H = g, Laplacian 2 (exercises the Gamma term)
  const auto q = pt({1.7, 0.4});
  CHECK(max_abs_diff(hessian_at(polar(), parse_expr("0.5*r^2", {"r", "th"}), q), metric_at(polar(), q)) < 1e-12);
  CHECK(laplacian_at(polar(), parse_expr("0.5*r^2", {"r", "th"}), q) == doctest::Approx(2.0));
  // base line (I, -dt^2), f = a t + b
  const auto base = MetricField::diagonal({"t"}, {"-1"}, {-1});
  CHECK(hessian_at(base, parse_expr("2.5*t + 1", {"t"}), pt({0.4})).max_abs() == 0.0);
  // Lorentzian trace: -d_t^2 + d_x^2 of t^2 + x^2 = 0
  const auto mink = MetricField::diagonal({"t", "x"}, {"-1", "1"}, {-1, 1});
  CHECK(std::abs(laplacian_at(mink, parse_expr("t^2 + x^2", {"t", "x"}), pt({0.2, 0.3}))) < 1e-14);
}

TEST_CASE("integrate_geodesic") {
  const auto e = euclid(2);
  const auto traj = integrate_geodesic(e, pt({0.1, 0.2}), pt({1.0, -0.5}), 100, 0.01);
  REQUIRE(traj.samples.size() == 101);
  CHECK_FALSE(traj.aborted);
  const auto& last = traj.samples.back().point;
  CHECK(std::abs(last[0] - 1.1) < 1e-8);
  CHECK(std::abs(last[1] - (0.2 - 0.5)) < 1e-8);

  const auto mink = MetricField::diagonal({"t", "x"}, {"-1", "1^2"}, {-1, 1});
  const auto mt = integrate_geodesic(mink, pt({0.0, 0.0}), pt({1.0, 0.3}), 50, 0.02);
  CHECK(std::abs(mt.samples.back().point[0] - 1.0) < 1e-8);
  CHECK(std::abs(mt.samples.back().point[1] - 0.3) < 1e-8);

  const auto st = integrate_geodesic(sphere2(), pt({pi / 2, 0.0}), pt({0.0, 1.0}), 300, 0.01);
  double worst = 0;
  for (const auto& s : st.samples) worst = std::max(worst, std::abs(s.point[0] - pi / 2));
  CHECK(worst < 1e-6);

  // leaving the half plane y > 0 aborts with a partial trajectory
  const auto out = integrate_geodesic(euclid(2).coords == std::vector<std::string>{"x", "y"}
                                          ? MetricField::diagonal({"x", "y"}, {"1/sqrt(y)", "1/sqrt(y)"}, {1, 1})
                                          : e,
                                      pt({0.0, 0.5}), pt({0.0, -1.0}), 200, 0.01);
  CHECK(out.aborted);
  CHECK(out.samples.size() > 1);
  CHECK(out.samples.size() < 201);
}

TEST_CASE("jacobi_residual") {
  const auto e = euclid(2);
  const auto line = integrate_geodesic(e, pt({0.0, 0.0}), pt({1.0, 2.0}), 40, 0.01);
  CHECK(jacobi_residual(e, line, VectorFieldSpec::from_strings({"1", "2"}, {"x", "y"})) < 1e-6);

  const auto s = sphere2();
  // a meridian (great circle through the poles region, kept away from them)
  const auto meridian = integrate_geodesic(s, pt({0.6, 0.3}), pt({1.0, 0.0}), 150, 0.01);
  std::vector<std::vector<double>> tangent;
  for (const auto& smp : meridian.samples) tangent.push_back(smp.velocity);
  CHECK(jacobi_residual(s, meridian, tangent) < 1e-6);
  CHECK(jacobi_residual(s, meridian, VectorFieldSpec::from_strings({"0", "1"}, {"th", "ph"})) < 1e-4);
  const auto equator = integrate_geodesic(s, pt({pi / 2, 0.0}), pt({0.0, 1.0}), 150, 0.01);
  CHECK(jacobi_residual(s, equator, VectorFieldSpec::from_strings({"1", "0"}, {"th", "ph"})) > 0.1);

  Trajectory tiny = line;
  tiny.samples.resize(4);
  CHECK_THROWS_AS(jacobi_residual(e, tiny, VectorFieldSpec::from_strings({"1", "2"}, {"x", "y"})), GeometryError);
  tiny = line;
  tiny.samples.resize(6);  // narrow stencil path
  CHECK(jacobi_residual(e, tiny, VectorFieldSpec::from_strings({"1", "2"}, {"x", "y"})) < 1e-6);
}

TEST_CASE("sectional_curvature_at") {
  const auto p = pt({0.8, 0.4});
  const std::vector<double> x{1.0, 0.2}, y{0.3, 1.0};
  CHECK(sectional_curvature_at(sphere2(), p, x, y) == doctest::Approx(1.0));
  CHECK(sectional_curvature_at(hyperbolic(), p, x, y) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(sectional_curvature_at(sphere2(), p, x, x), GeometryError);
}
