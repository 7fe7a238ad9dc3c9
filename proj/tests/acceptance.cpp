// Acceptance gate: one [PASS]/[FAIL] line per criterion. Usage: acceptance <path-to-grwsym>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "grwsym/catalog.hpp"
#include "grwsym/chart.hpp"
#include "grwsym/oracle.hpp"
#include "grwsym/scenario.hpp"
#include "grwsym/soliton.hpp"
#include "grwsym/symmetry.hpp"

using namespace grwsym;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& details) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << " " << name << ": " << details << "\n";
  if (!ok) ++failures;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Setup {
  FiberEntry fiber;
  GRWSpacetime s;
  PointSet pts;
};

Setup make(FiberEntry fiber, const std::string& f, Interval dom, int tc = 6, int fc = 4, std::uint64_t seed = 20240601) {
  GRWSpacetime s = GRWSpacetime::make(fiber.metric, parse_expr(f, {"t"}), dom);
  const double w = dom.hi - dom.lo;
  SplitMix64 rng(seed);
  PointSet pts = sample_points({{dom.lo + 0.1 * w, dom.hi - 0.1 * w}, fiber.box}, tc, fc, rng);
  return {std::move(fiber), std::move(s), std::move(pts)};
}

ScalarExpr th(const std::string& e) { return parse_expr(e, {"t"}); }

const Tolerances tol;

void oracle_equivalence() {
  const auto t0 = Clock::now();
  double worst_exact = 0, worst_fd = 0;
  bool ok = true;
  std::size_t combos = 0, points = 0;
  for (const auto& combo : oracle_combinations()) {
    SplitMix64 rng(20240601);
    const PointSet pts = sample_points(combo.region, 10, 5, rng);
    for (const auto& [id, z] : combo.fields) {
      const OracleDiff d = oracle_diff(combo.spacetime, z, pts);
      for (const auto& [k, v] : d.deviation) {
        double& worst = OracleDiff::uses_fd(k) ? worst_fd : worst_exact;
        worst = std::max(worst, v);
      }
      ok = ok && d.within(tol);
    }
    ++combos;
    points = pts.size();
  }
  const double secs = seconds_since(t0);
  ok = ok && combos >= 8 && points >= 50 && secs <= 60.0;
  report(1, "oracle_equivalence", ok,
         std::to_string(combos) + " spacetimes x " + std::to_string(points) + " points, max deviation " +
             sci(worst_exact) + " (limit 1e-6), fd " + sci(worst_fd) + " (limit 1e-4), " + sci(secs) + " s");
}

double riemann_invariant_defect(const MetricField& m, std::span<const double> p) {
  const TensorValue r = riemann_at(m, p);
  const TensorValue ric = ricci_at(m, p);
  const std::size_t n = r.dim();
  double d = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      d = std::max(d, std::abs(ric(a, b) - ric(b, a)));
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t e = 0; e < n; ++e) {
          const double v = r(a, b, c, e);
          d = std::max({d, std::abs(v + r(b, a, c, e)), std::abs(v + r(a, b, e, c)), std::abs(v - r(c, e, a, b)),
                        std::abs(v + r(a, c, e, b) + r(a, e, b, c))});
        }
    }
  return d;
}

void tensor_invariants() {
  double worst = 0;
  std::size_t metrics = 0;
  auto scan = [&](const MetricField& m, const SampleRegion& region) {
    SplitMix64 rng(7);
    for (const auto& p : sample_points(region, 4, 5, rng)) worst = std::max(worst, riemann_invariant_defect(m, p));
    ++metrics;
  };
  auto scan_fiber = [&](const FiberEntry& fe) {
    SplitMix64 rng(7);
    SampleRegion r{{0, 1}, fe.box};
    for (const auto& p : sample_points(r, 1, 20, rng)) {
      const std::vector<double> x(p.begin() + 1, p.end());
      worst = std::max(worst, riemann_invariant_defect(fe.metric, x));
    }
    ++metrics;
  };
  for (const auto& fe : {euclidean_fiber(2), euclidean_fiber(3), sphere_fiber(2), sphere_fiber(2, 2.0), sphere_fiber(3),
                         hyperbolic_fiber(), frw_spatial_fiber(1), frw_spatial_fiber(0), frw_spatial_fiber(-1)})
    scan_fiber(fe);
  for (const auto& combo : oracle_combinations()) scan(combo.spacetime.ambient(), combo.region);
  report(2, "tensor_invariants", worst < 1e-8,
         std::to_string(metrics) + " metrics, max antisymmetry/pair/Bianchi/Ricci-symmetry defect " + sci(worst) +
             " (limit 1e-8)");
}

void timelike_conformal_iff() {
  const Setup u = make(euclidean_fiber(2), "exp(t)", {-1, 1});
  bool ok = true;
  double factor = 0;
  std::string detail;
  for (const auto& [h, expect] : std::vector<std::pair<std::string, bool>>{
           {"0.5*exp(t)", true}, {"3*exp(t)", true}, {"t*exp(t)", false}, {"exp(t) + 0.1*t", false}}) {
    const auto rep = classify(u.s, h, timelike(u.s, th(h)), u.pts, tol);
    const bool got = rep.verdicts.at("conformal").holds;
    ok = ok && got == expect;
    if (got) {
      const auto c = check_timelike_conformal(u.s, th(h), u.pts, tol);
      factor = std::max(factor, c.values.at("factor_error"));
    }
    detail += h + " -> " + (got ? "conformal" : "not conformal") + "; ";
  }
  ok = ok && factor < 1e-6;
  report(3, "timelike_conformal_iff", ok, detail + "max |rho - 2h'| " + sci(factor) + " (limit 1e-6)");
}

void concircular_dichotomy() {
  const Setup flat = make(euclidean_fiber(2), "1", {-1, 1});
  const SplitVector pos = SplitVector::make("t", {"x", "y"}, flat.fiber.metric.coords);
  const ConcircularResult cr = ambient_concircular(flat.s, pos, flat.pts);
  double rho_err = 0;
  for (double r : cr.rho) rho_err = std::max(rho_err, std::abs(r - 1.0));
  const bool a = cr.residual < tol.exact && rho_err < 1e-8 &&
                 classify(flat.s, "position", pos, flat.pts, tol).verdicts.at("concircular").holds;

  const Setup ex = make(euclidean_fiber(2), "exp(t)", {-1, 1});
  const bool b = classify(ex.s, "af", timelike(ex.s, th("2*exp(t)")), ex.pts, tol).verdicts.at("concircular").holds;
  const SplitVector one_radial = SplitVector::make("1", {"x", "y"}, ex.fiber.metric.coords);
  const bool c = !classify(ex.s, "one_radial", one_radial, ex.pts, tol).verdicts.at("concircular").holds;
  report(4, "concircular_dichotomy", a && b && c,
         std::string("(t, radial) f=1: max |rho - 1| ") + sci(rho_err) + " (limit 1e-8); (2f, 0) f=e^t: " +
             (b ? "concircular" : "not concircular") + "; (1, radial) f=e^t: " +
             (c ? "not concircular" : "concircular"));
}

void concircular_curvature() {
  const Setup u = make(euclidean_fiber(2), "1", {-1, 1}, 5, 4);
  const SplitVector pos = SplitVector::make("t", {"x", "y"}, u.fiber.metric.coords);
  SplitMix64 rng(31);
  const auto r = concircular_curvature_consequence(u.s, pos, u.pts, tol, rng, 5);
  const double ric = r.values.count("ricci_zeta_zeta") ? r.values.at("ricci_zeta_zeta") : INFINITY;
  const double kappa = r.values.count("sectional_curvature") ? r.values.at("sectional_curvature") : INFINITY;
  const double planes = r.values.count("planes_checked") ? r.values.at("planes_checked") : 0;
  const bool ok = r.status == Status::Pass && ric < 1e-8 && kappa < 1e-8 && u.pts.size() >= 20 && planes >= 100;
  report(5, "concircular_curvature", ok,
         std::to_string(u.pts.size()) + " points, " + std::to_string(int(planes)) + " planes, max |Ric(zeta,zeta)| " +
             sci(ric) + ", max |kappa| " + sci(kappa) + " (limit 1e-8)");
}

void collineation_ode() {
  const Setup ex = make(euclidean_fiber(2), "exp(t)", {-1, 1});
  const auto r = check_timelike_cc_ode(ex.s, th("1"), ex.pts, tol);
  const double res = r.values.at("residual");
  const double ode0 = cc_ode_value(ex.s, th("1"), 0.0);
  double scaled = 0;
  for (double t : sample_times(ex.pts)) scaled = std::max(scaled, std::abs(cc_ode_value(ex.s, th("1"), t) / std::exp(2 * t) - 2.0));
  bool ok = res > 0.1 && std::abs(ode0 - 2.0) < 1e-9 && scaled < 1e-9;
  std::string detail = "f=e^t, h=1: residual " + sci(res) + " (> 0.1), ODE at t=0 " + sci(ode0) +
                       " (2 +- 1e-9), max |ODE/f^2 - 2| " + sci(scaled) + "; linear f:";
  const Setup lin1 = make(euclidean_fiber(2), "1", {-1, 1});
  const Setup lin2 = make(hyperbolic_fiber(), "t", {0.2, 2});
  for (const Setup* u : {&lin1, &lin2}) {
    const auto q = check_timelike_cc_ode(u->s, th("1"), u->pts, tol);
    const double qres = q.values.at("residual"), qode = q.values.at("ode_max");
    ok = ok && qres < tol.fd && qode < tol.exact && q.status == Status::Pass;
    detail += " " + u->fiber.id + " residual " + sci(qres) + " ODE " + sci(qode) + ";";
  }
  report(6, "collineation_ode", ok, detail);
}

void ricci_dichotomy() {
  bool ok = true;
  int instances = 0, genuine = 0;
  for (const auto& doc : catalog_scenarios()) {
    const std::string name = doc.at("name");
    const auto rep = run_scenario(parse_scenario(doc, name), RunMode::Verify);
    for (const auto& c : rep.at("checks")) {
      if (c.at("check") != "rc_dichotomy") continue;
      ++instances;
      const auto& v = c.at("values");
      ok = ok && c.at("status") != "fail" && c.at("status") != "error";
      if (v.at("residual").get<double>() < tol.fd) {
        ++genuine;
        const bool hz = v.at("hessian_zero").get<double>() == 1.0;
        const bool prop = v.at("proportional").get<double>() == 1.0 && v.at("a_stdev").get<double>() < 1e-8;
        ok = ok && (hz || prop);
      }
    }
  }
  const Setup ex = make(euclidean_fiber(2), "exp(t)", {-1, 1});
  const auto r = check_rc_dichotomy(ex.s, th("exp(2*t)"), ex.pts, tol);
  const double a_err = std::abs(r.values.at("a") - 1.0);
  ok = ok && instances > 0 && genuine > 0 && r.status != Status::Fail && a_err < 1e-8;
  report(7, "ricci_collineation_dichotomy", ok,
         std::to_string(instances) + " shipped instances (" + std::to_string(genuine) +
             " genuine collineations) satisfy f''=0 or h/f^n constant; f=e^t, h=f^2: |a - 1| " + sci(a_err) +
             " (limit 1e-8)");
}

void soliton_suite() {
  const double c = 1.5;
  const Setup g = make(euclidean_fiber(2), "1", {-1, 1});
  const SplitVector z = catalog_field("gaussian_analogue", g.fiber, g.s.f(), {"", c, 0});
  const double res = soliton_residual({g.s, z, c}, g.pts);
  const LambdaFit fit = fit_lambda(g.s, z, g.pts);
  const auto ind = induced_base_and_fiber({g.s, z, c}, g.pts, tol);
  const double mu_err = std::abs(ind.check.values.at("mu") - c);
  bool ok = res < 1e-8 && std::abs(fit.lambda - c) < 1e-8 && ind.check.status == Status::Pass && ind.residual < 1e-8 &&
            mu_err < 1e-8;
  std::string detail = "gaussian c=1.5: residual " + sci(res) + ", |fit - c| " + sci(std::abs(fit.lambda - c)) +
                       ", induced residual " + sci(ind.residual) + ", |mu - c| " + sci(mu_err);

  // Killing case with lambda = -n f''/f, on an instance with f'' = 0.
  const Setup k = make(euclidean_fiber(2), "1", {-1, 1});
  const auto kr = einstein_fiber_from_conformal_soliton(
      {k.s, catalog_field("fiber_rotation", k.fiber, k.s.f()), 0.0}, k.pts, tol);
  const double negated = kr.values.count("killing_lambda_error_negated") ? kr.values.at("killing_lambda_error_negated")
                                                                         : INFINITY;
  ok = ok && kr.status == Status::Pass && negated < 1e-6;
  detail += "; Killing lambda = -n f''/f on flat rotation: " + sci(negated);

  // Killing case on de Sitter, where f'' != 0.
  const Setup d = make(sphere_fiber(3), "cosh(t)", {-1, 1});
  const auto dr = einstein_fiber_from_conformal_soliton({d.s, catalog_field("zero", d.fiber, d.s.f()), 3.0}, d.pts, tol);
  const double corrected = dr.values.at("killing_lambda_error");
  ok = ok && dr.status == Status::Pass && corrected < 1e-6;
  detail += "; de Sitter lambda = +n f''/f: " + sci(corrected) + " (-n f''/f off by " +
            sci(dr.values.at("killing_lambda_error_negated")) + ")";
  report(8, "soliton_suite", ok, detail);
}

void killing_laplacian() {
  bool ok = true;
  std::string detail;
  struct Case {
    FiberEntry fiber;
    std::string f;
  };
  for (const auto& cs : std::vector<Case>{{euclidean_fiber(2), "1"}, {sphere_fiber(2), "1"}, {sphere_fiber(2), "cosh(t)"}}) {
    const Setup u = make(cs.fiber, cs.f, {-1, 1});
    const auto r = killing_length_laplacian_check(u.s, catalog_field("fiber_rotation", u.fiber, u.s.f()), u.pts, tol);
    const double e = r.values.count("identity_error") ? r.values.at("identity_error") : INFINITY;
    ok = ok && r.status == Status::Pass && e < 1e-4;
    detail += u.fiber.id + " f=" + cs.f + ": " + sci(e) + "; ";
  }
  report(9, "killing_length_laplacian", ok, detail + "limit 1e-4");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void determinism(const std::string& cli) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("grwsym_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto t0 = Clock::now();
  int codes[2];
  for (int i = 0; i < 2; ++i) {
    const std::string cmd =
        "\"" + cli + "\" verify --all-catalog --out \"" + (dir / ("run" + std::to_string(i) + ".json")).string() + "\"";
    codes[i] = std::system(cmd.c_str());
  }
  const double secs = seconds_since(t0);
  const std::string a = slurp(dir / "run0.json"), b = slurp(dir / "run1.json");
  fs::remove_all(dir);
  const bool ok = codes[0] == 0 && codes[1] == 0 && !a.empty() && a == b && secs < 300.0;
  report(10, "determinism", ok,
         std::string("two runs ") + (a == b ? "byte-identical" : "differ") + " (" + std::to_string(a.size()) +
             " bytes), exit codes " + std::to_string(codes[0]) + "/" + std::to_string(codes[1]) + ", " + sci(secs) +
             " s (limit 300 s)");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <path-to-grwsym>\n";
    return 2;
  }
  oracle_equivalence();
  tensor_invariants();
  timelike_conformal_iff();
  concircular_dichotomy();
  concircular_curvature();
  collineation_ode();
  ricci_dichotomy();
  soliton_suite();
  killing_laplacian();
  determinism(argv[1]);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
