#include "grwsym/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "grwsym/oracle.hpp"
#include "grwsym/soliton.hpp"
#include "grwsym/symmetry.hpp"

namespace grwsym {

using nlohmann::json;

namespace {

enum class Arg { Field, H };

struct KindSpec {
  Arg arg;
  std::set<std::string> params;
  bool soliton = false;
};

const std::map<std::string, KindSpec>& kinds() {
  static const std::map<std::string, KindSpec> k{
      {"classify", {Arg::Field, {"expect_flags", "rho", "kappa_grav", "lambda_cosmo"}}},
      {"timelike_conformal", {Arg::H, {}}},
      {"projected_conformal", {Arg::Field, {}}},
      {"constant_length_killing", {Arg::Field, {}}},
      {"conformal_factor_along_curves", {Arg::Field, {}}},
      {"concircular", {Arg::Field, {}}},
      {"concircular_curvature", {Arg::Field, {"planes"}}},
      {"curvature_collineation", {Arg::Field, {}}},
      {"timelike_cc_ode", {Arg::H, {}}},
      {"fiber_killing_cc", {Arg::Field, {}}},
      {"ricci_collineation", {Arg::Field, {}}},
      {"rc_dichotomy", {Arg::H, {}}},
      {"rc_fdiamond_equivalence", {Arg::Field, {}}},
      {"conformal_rc", {Arg::Field, {}}},
      {"matter_collineation", {Arg::Field, {"kappa_grav", "lambda_cosmo"}}},
      {"two_killing", {Arg::Field, {}}},
      {"killing_length_laplacian", {Arg::Field, {}}},
      {"jacobi", {Arg::Field, {"p0", "v0", "steps", "dt"}}},
      {"implication_chain", {Arg::Field, {}}},
      {"oracle_equivalence", {Arg::Field, {}}},
      {"soliton", {Arg::Field, {"lambda", "fit_lambda"}, true}},
      {"induced_fiber_soliton", {Arg::Field, {"lambda"}, true}},
      {"einstein_fiber", {Arg::Field, {"lambda"}, true}},
      {"conformal_from_einstein", {Arg::Field, {"lambda"}, true}},
      {"concircular_soliton_ricci_flat", {Arg::Field, {"lambda"}, true}},
      {"two_killing_soliton", {Arg::Field, {"lambda"}, true}},
      {"sufficient_conditions", {Arg::Field, {"sigma", "rho", "mu"}, true}},
  };
  return k;
}

const std::set<std::string>& verdict_names() {
  static const std::set<std::string> v{"killing",
                                       "homothetic",
                                       "conformal",
                                       "concircular",
                                       "curvature_collineation",
                                       "ricci_collineation",
                                       "conformal_ricci_collineation",
                                       "matter_collineation",
                                       "two_killing"};
  return v;
}

// JSON reading helpers. `at` is the origin-qualified pointer used in errors.

struct Ctx {
  std::string origin;
  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    throw ScenarioError(origin + ": " + (path.empty() ? "/" : path), msg);
  }
};

void require_object(const Ctx& c, const json& j, const std::string& path) {
  if (!j.is_object()) c.fail(path, "expected an object");
}

void check_keys(const Ctx& c, const json& j, const std::string& path, const std::set<std::string>& allowed) {
  require_object(c, j, path);
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) c.fail(path + "/" + k, "unknown key '" + k + "'");
  }
}

double get_number(const Ctx& c, const json& j, const std::string& path) {
  if (!j.is_number()) c.fail(path, "expected a number");
  return j.get<double>();
}

double opt_number(const Ctx& c, const json& obj, const std::string& key, const std::string& path, double dflt) {
  return obj.contains(key) ? get_number(c, obj.at(key), path + "/" + key) : dflt;
}

long get_int(const Ctx& c, const json& j, const std::string& path, long lo) {
  if (!j.is_number_integer()) c.fail(path, "expected an integer");
  const long v = j.get<long>();
  if (v < lo) c.fail(path, "must be at least " + std::to_string(lo));
  return v;
}

std::string get_string(const Ctx& c, const json& j, const std::string& path) {
  if (!j.is_string()) c.fail(path, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> get_strings(const Ctx& c, const json& j, const std::string& path) {
  if (!j.is_array()) c.fail(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_string(c, j[i], path + "/" + std::to_string(i)));
  return out;
}

std::vector<double> get_numbers(const Ctx& c, const json& j, const std::string& path) {
  if (!j.is_array()) c.fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(c, j[i], path + "/" + std::to_string(i)));
  return out;
}

Interval get_interval(const Ctx& c, const json& j, const std::string& path) {
  const auto v = get_numbers(c, j, path);
  if (v.size() != 2) c.fail(path, "expected [lo, hi]");
  if (!(v[0] < v[1])) c.fail(path, "interval needs lo < hi");
  return {v[0], v[1]};
}

std::vector<Interval> get_box(const Ctx& c, const json& j, const std::string& path, std::size_t n) {
  if (!j.is_array() || j.size() != n) c.fail(path, "expected " + std::to_string(n) + " intervals");
  std::vector<Interval> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(get_interval(c, j[i], path + "/" + std::to_string(i)));
  return out;
}

template <class F>
auto guarded(const Ctx& c, const std::string& path, F&& fn) {
  try {
    return fn();
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    c.fail(path, e.what());
  }
}

ScalarExpr get_expr(const Ctx& c, const json& j, const std::string& path, const std::vector<std::string>& vars) {
  const std::string text = get_string(c, j, path);
  return guarded(c, path, [&] { return parse_expr(text, vars); });
}

std::vector<std::string> ambient_coords(const FiberEntry& fiber) {
  std::vector<std::string> v{"t"};
  v.insert(v.end(), fiber.metric.coords.begin(), fiber.metric.coords.end());
  return v;
}

FiberEntry parse_fiber(const Ctx& c, const json& j, const Margins& m) {
  const std::string path = "/fiber";
  require_object(c, j, path);
  if (j.contains("catalog")) {
    check_keys(c, j, path, {"catalog", "n", "radius", "k", "box"});
    const std::string kind = get_string(c, j.at("catalog"), path + "/catalog");
    const long n = j.contains("n") ? get_int(c, j.at("n"), path + "/n", 1) : (kind == "frw_spatial" ? 3 : 2);
    const double param = kind == "frw_spatial" ? opt_number(c, j, "k", path, 0.0) : opt_number(c, j, "radius", path, 1.0);
    if (kind != "sphere" && j.contains("radius")) c.fail(path + "/radius", "only sphere fibers take a radius");
    if (kind != "frw_spatial" && j.contains("k")) c.fail(path + "/k", "only frw_spatial fibers take k");
    FiberEntry e = guarded(c, path, [&] { return catalog_fiber(kind, int(n), param, m); });
    if (j.contains("box")) e.box = get_box(c, j.at("box"), path + "/box", e.metric.dim());
    return e;
  }
  check_keys(c, j, path, {"coords", "metric", "diag", "box", "id"});
  FiberEntry e;
  e.kind = "inline";
  e.id = j.contains("id") ? get_string(c, j.at("id"), path + "/id") : "inline";
  if (!j.contains("coords")) c.fail(path, "missing 'coords'");
  const auto coords = get_strings(c, j.at("coords"), path + "/coords");
  if (coords.empty()) c.fail(path + "/coords", "fiber needs at least one coordinate");
  const std::vector<int> sig(coords.size(), 1);
  if (j.contains("metric") == j.contains("diag")) c.fail(path, "give exactly one of 'metric' and 'diag'");
  if (j.contains("diag")) {
    const auto diag = get_strings(c, j.at("diag"), path + "/diag");
    if (diag.size() != coords.size()) c.fail(path + "/diag", "needs one entry per coordinate");
    e.metric = guarded(c, path + "/diag", [&] { return MetricField::diagonal(coords, diag, sig); });
  } else {
    const json& rows = j.at("metric");
    if (!rows.is_array() || rows.size() != coords.size()) c.fail(path + "/metric", "expected a square matrix of strings");
    std::vector<std::vector<std::string>> r;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      r.push_back(get_strings(c, rows[i], path + "/metric/" + std::to_string(i)));
      if (r.back().size() != coords.size()) c.fail(path + "/metric/" + std::to_string(i), "row has the wrong length");
    }
    e.metric = guarded(c, path + "/metric", [&] { return MetricField::from_strings(coords, r, sig); });
  }
  if (j.contains("box")) e.box = get_box(c, j.at("box"), path + "/box", coords.size());
  return e;
}

ScalarExpr parse_warping(const Ctx& c, const json& j) {
  const std::string path = "/f";
  if (j.is_string()) return get_expr(c, j, path, {"t"});
  check_keys(c, j, path, {"catalog", "a", "b", "p"});
  if (!j.contains("catalog")) c.fail(path, "expected an expression string or {\"catalog\": ...}");
  const std::string kind = get_string(c, j.at("catalog"), path + "/catalog");
  return guarded(c, path, [&] {
    return catalog_warping(kind, opt_number(c, j, "a", path, 1.0), opt_number(c, j, "b", path, 0.0),
                           opt_number(c, j, "p", path, 1.0));
  });
}

ScenarioField parse_field(const Ctx& c, const json& j, const std::string& path, const FiberEntry& fiber,
                          const ScalarExpr& f) {
  require_object(c, j, path);
  ScenarioField out;
  if (!j.contains("id")) c.fail(path, "missing 'id'");
  out.id = get_string(c, j.at("id"), path + "/id");
  out.spec = j;
  const auto& coords = fiber.metric.coords;
  if (j.contains("catalog")) {
    check_keys(c, j, path, {"id", "catalog", "h", "c", "index", "note"});
    const std::string kind = get_string(c, j.at("catalog"), path + "/catalog");
    FieldParams fp;
    if (j.contains("h")) {
      get_expr(c, j.at("h"), path + "/h", {"t"});
      fp.h = j.at("h").get<std::string>();
    }
    fp.c = opt_number(c, j, "c", path, 1.0);
    if (j.contains("index")) fp.index = int(get_int(c, j.at("index"), path + "/index", 0));
    out.field = guarded(c, path, [&] { return catalog_field(kind, fiber, f, fp); });
    return out;
  }
  check_keys(c, j, path, {"id", "h", "zeta", "note"});
  if (!j.contains("h")) c.fail(path, "missing 'h' (or 'catalog')");
  const ScalarExpr h = get_expr(c, j.at("h"), path + "/h", {"t"});
  VectorFieldSpec zeta = VectorFieldSpec::zero(coords);
  if (j.contains("zeta")) {
    const auto comps = get_strings(c, j.at("zeta"), path + "/zeta");
    if (comps.size() != coords.size()) c.fail(path + "/zeta", "needs one component per fiber coordinate");
    for (std::size_t i = 0; i < comps.size(); ++i)
      zeta.components[i] = get_expr(c, j.at("zeta")[i], path + "/zeta/" + std::to_string(i), coords);
  }
  out.field = SplitVector::from(h, zeta, coords);
  return out;
}

ScenarioCheck parse_check(const Ctx& c, const json& j, const std::string& path, const Scenario& sc) {
  require_object(c, j, path);
  if (!j.contains("check")) c.fail(path, "missing 'check'");
  ScenarioCheck out;
  out.kind = get_string(c, j.at("check"), path + "/check");
  out.path = path;
  const auto it = kinds().find(out.kind);
  if (it == kinds().end()) c.fail(path + "/check", "unknown check '" + out.kind + "'");
  const KindSpec& spec = it->second;
  std::set<std::string> allowed{"check", "expect", "expect_values", "value_tol", "note"};
  allowed.insert(spec.params.begin(), spec.params.end());
  allowed.insert(spec.arg == Arg::Field ? "field" : "h");
  check_keys(c, j, path, allowed);

  if (spec.arg == Arg::Field) {
    if (!j.contains("field")) c.fail(path, "missing 'field'");
    out.field = get_string(c, j.at("field"), path + "/field");
    const bool known = std::any_of(sc.fields.begin(), sc.fields.end(), [&](const auto& f) { return f.id == out.field; });
    if (!known) c.fail(path + "/field", "no field with id '" + out.field + "'");
  } else {
    if (!j.contains("h")) c.fail(path, "missing 'h'");
    out.h = get_expr(c, j.at("h"), path + "/h", {"t"});
  }
  if (j.contains("expect")) {
    out.expect = get_string(c, j.at("expect"), path + "/expect");
    if (out.expect != "pass" && out.expect != "fail" && out.expect != "vacuous")
      c.fail(path + "/expect", "expected one of pass, fail, vacuous");
  }
  if (j.contains("expect_values")) {
    const json& ev = j.at("expect_values");
    require_object(c, ev, path + "/expect_values");
    for (const auto& [k, v] : ev.items()) out.expect_values[k] = get_number(c, v, path + "/expect_values/" + k);
  }
  if (j.contains("value_tol")) out.value_tol = get_number(c, j.at("value_tol"), path + "/value_tol");

  const auto amb = ambient_coords(sc.fiber);
  const std::size_t dim = amb.size();
  json params = json::object();
  for (const auto& key : spec.params) {
    if (!j.contains(key)) continue;
    const json& v = j.at(key);
    const std::string kp = path + "/" + key;
    if (key == "rho" || key == "sigma") {
      get_expr(c, v, kp, amb);
    } else if (key == "fit_lambda") {
      if (!v.is_boolean()) c.fail(kp, "expected true or false");
    } else if (key == "expect_flags") {
      require_object(c, v, kp);
      for (const auto& [name, flag] : v.items()) {
        if (!verdict_names().count(name)) c.fail(kp + "/" + name, "unknown classification '" + name + "'");
        if (!flag.is_boolean()) c.fail(kp + "/" + name, "expected true or false");
      }
    } else if (key == "p0" || key == "v0") {
      if (get_numbers(c, v, kp).size() != dim) c.fail(kp, "needs " + std::to_string(dim) + " entries");
    } else if (key == "steps" || key == "planes") {
      get_int(c, v, kp, 1);
    } else {
      get_number(c, v, kp);
    }
    params[key] = v;
  }
  if (spec.soliton && out.kind != "sufficient_conditions" && !params.contains("lambda") &&
      !params.value("fit_lambda", false))
    c.fail(path, "missing 'lambda'");
  if (out.kind == "soliton" && params.contains("lambda") && params.value("fit_lambda", false))
    c.fail(path, "give either 'lambda' or 'fit_lambda'");
  if (out.kind == "sufficient_conditions")
    for (const char* key : {"sigma", "rho", "mu"})
      if (!params.contains(key)) c.fail(path, std::string("missing '") + key + "'");
  out.params = params;
  return out;
}

// Running.

const SplitVector& field_of(const Scenario& sc, const std::string& id) {
  for (const auto& f : sc.fields)
    if (f.id == id) return f.field;
  throw PreconditionError("no field with id '" + id + "'");
}

CheckResult residual_check(const std::string& name, double residual, double tol, const std::string& fail_note) {
  CheckResult r{name, Status::Pass, {{"residual", residual}}, {}};
  r.require(residual < tol, fail_note);
  return r;
}

json verdicts_json(const ClassificationReport& rep) {
  json out = json::object();
  json v = json::object();
  for (const auto& [name, verdict] : rep.verdicts) v[name] = {{"holds", verdict.holds}, {"residual", verdict.residual}};
  out["verdicts"] = v;
  out["constants"] = rep.constants;
  out["samples_used"] = rep.samples_used;
  return out;
}

MatterParams matter_of(const json& params) {
  return {params.value("kappa_grav", 1.0), params.value("lambda_cosmo", 0.0)};
}

CheckResult run_classify_check(const Scenario& sc, const ScenarioCheck& ck, const PointSet& pts) {
  const GRWSpacetime& s = *sc.spacetime;
  const ClassificationReport rep = classify(s, ck.field, field_of(sc, ck.field), pts, sc.tol, matter_of(ck.params));
  CheckResult r{"classify", Status::Pass, {}, {}};
  for (const auto& [name, v] : rep.verdicts) {
    r.values[name] = v.holds ? 1.0 : 0.0;
    r.values[name + "_residual"] = v.residual;
  }
  for (const auto& [name, v] : rep.constants) r.values[name] = v;
  if (ck.params.contains("expect_flags")) {
    for (const auto& [name, flag] : ck.params.at("expect_flags").items()) {
      const bool holds = rep.verdicts.at(name).holds;
      r.require(holds == flag.get<bool>(), name + (holds ? " holds" : " does not hold"));
    }
  }
  if (ck.params.contains("rho")) {
    const ScalarExpr rho = parse_expr(ck.params.at("rho").get<std::string>(), ambient_coords(sc.fiber));
    double err = 0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      std::map<std::string, double> b;
      const auto amb = ambient_coords(sc.fiber);
      for (std::size_t i = 0; i < amb.size(); ++i) b[amb[i]] = pts[k][i];
      const double want = eval_scalar(rho, b);
      err = std::max(err, std::abs(rep.rho[k] - want) / std::max(1.0, std::abs(want)));
    }
    r.values["rho_error"] = err;
    r.require(err < sc.tol.exact, "conformal factor differs from the expected expression");
  }
  return r;
}

CheckResult run_one(const Scenario& sc, const ScenarioCheck& ck, const PointSet& pts, SplitMix64& rng) {
  const GRWSpacetime& s = *sc.spacetime;
  const Tolerances& tol = sc.tol;
  const std::string& k = ck.kind;
  const json& prm = ck.params;
  if (k == "classify") return run_classify_check(sc, ck, pts);
  if (k == "timelike_conformal") return check_timelike_conformal(s, *ck.h, pts, tol);
  if (k == "timelike_cc_ode") return check_timelike_cc_ode(s, *ck.h, pts, tol);
  if (k == "rc_dichotomy") return check_rc_dichotomy(s, *ck.h, pts, tol);

  const SplitVector& z = field_of(sc, ck.field);
  if (k == "projected_conformal") return check_projected_conformal(s, z, pts, tol);
  if (k == "constant_length_killing") return check_constant_length_killing(s, z, pts, tol);
  if (k == "conformal_factor_along_curves") return check_conformal_factor_along_curves(s, z, pts, tol, rng);
  if (k == "concircular") return check_concircular(s, z, pts, tol);
  if (k == "concircular_curvature")
    return concircular_curvature_consequence(s, z, pts, tol, rng, prm.value("planes", 5));
  if (k == "curvature_collineation")
    return residual_check(k, curvature_collineation_residual(s, z, pts), tol.fd, "L_Z Riem != 0");
  if (k == "fiber_killing_cc") return check_fiber_killing_cc(s, z, pts, tol);
  if (k == "ricci_collineation") return residual_check(k, ricci_collineation_residual(s, z, pts), tol.fd, "L_Z Ric != 0");
  if (k == "rc_fdiamond_equivalence") return check_rc_fdiamond_equivalence(s, z, pts, tol);
  if (k == "conformal_rc") return check_conformal_rc(s, z, pts, tol);
  if (k == "matter_collineation")
    return residual_check(k, matter_collineation_residual(s, z, matter_of(prm), pts), tol.fd, "L_Z T != 0");
  if (k == "two_killing") return residual_check(k, two_killing_residual(s, z, pts), tol.fd, "L_Z L_Z gbar != 0");
  if (k == "killing_length_laplacian") return killing_length_laplacian_check(s, z, pts, tol);
  if (k == "jacobi") {
    std::vector<double> p0 = prm.contains("p0") ? prm.at("p0").get<std::vector<double>>() : pts.front();
    std::vector<double> v0(p0.size(), 0.2);
    v0[0] = 1.0;
    if (prm.contains("v0")) v0 = prm.at("v0").get<std::vector<double>>();
    CheckResult r{k, Status::Pass, {}, {"reported only"}};
    r.values["residual"] = killing_jacobi_residual(s, z, p0, v0, prm.value("steps", 200), prm.value("dt", 0.005));
    return r;
  }
  if (k == "implication_chain") {
    const ClassificationReport rep = classify(s, ck.field, z, pts, tol);
    CheckResult r{k, Status::Pass, {}, {}};
    for (const char* name : {"killing", "curvature_collineation", "ricci_collineation"})
      r.values[name] = rep.verdicts.at(name).holds ? 1.0 : 0.0;
    r.require(implication_chain_holds(rep), "Killing => curvature collineation => Ricci collineation is broken");
    return r;
  }
  if (k == "oracle_equivalence") {
    const OracleDiff d = oracle_diff(s, z, pts);
    CheckResult r{k, Status::Pass, {}, {}};
    for (const auto& [key, v] : d.deviation) {
      r.values[key] = v;
      r.require(v < d.threshold(key, tol), key + " deviates from the chart oracle");
    }
    return r;
  }
  if (k == "sufficient_conditions") {
    const auto amb = ambient_coords(sc.fiber);
    return sufficient_conditions_soliton(s, z, parse_expr(prm.at("sigma").get<std::string>(), amb),
                                         parse_expr(prm.at("rho").get<std::string>(), amb), prm.at("mu").get<double>(),
                                         pts, tol);
  }
  if (k == "soliton" && prm.value("fit_lambda", false)) {
    const LambdaFit fit = fit_lambda(s, z, pts);
    CheckResult r{k, Status::Pass, {{"lambda", fit.lambda}, {"soliton_residual", fit.residual}}, {}};
    r.values["pointwise_stdev"] = fit.pointwise_stdev;
    r.require(fit.residual < tol.exact, "no constant lambda makes this a soliton");
    return r;
  }
  const SolitonInstance inst{s, z, prm.at("lambda").get<double>()};
  if (k == "soliton") {
    const double res = soliton_residual(inst, pts);
    CheckResult r{k, Status::Pass, {{"lambda", inst.lambda}, {"soliton_residual", res}}, {}};
    r.require(res < tol.exact, "1/2 L_Z gbar + Ric != lambda gbar");
    return r;
  }
  if (k == "induced_fiber_soliton") return induced_base_and_fiber(inst, pts, tol).check;
  if (k == "einstein_fiber") return einstein_fiber_from_conformal_soliton(inst, pts, tol);
  if (k == "conformal_from_einstein") return conformal_from_einstein_soliton(inst, pts, tol);
  if (k == "concircular_soliton_ricci_flat") return concircular_soliton_ricci_flat(inst, pts, tol);
  if (k == "two_killing_soliton") return two_killing_soliton_props(inst, pts, tol);
  throw PreconditionError("unhandled check '" + k + "'");
}

json check_json(const Scenario& sc, const ScenarioCheck& ck, const PointSet& pts, SplitMix64& rng) {
  json out;
  out["check"] = ck.kind;
  out["path"] = ck.path;
  out["expected"] = ck.expect;
  if (!ck.field.empty()) out["field"] = ck.field;
  if (ck.h) out["h"] = ck.h->to_string();
  try {
    const CheckResult r = run_one(sc, ck, pts, rng);
    bool ok = ck.expect == status_name(r.status);
    std::vector<std::string> notes = r.notes;
    for (const auto& [name, want] : ck.expect_values) {
      const auto it = r.values.find(name);
      if (it == r.values.end()) {
        ok = false;
        notes.push_back("value '" + name + "' was not produced");
        continue;
      }
      const double t = ck.value_tol.value_or(sc.tol.exact);
      if (!(std::abs(it->second - want) <= t * std::max(1.0, std::abs(want)))) {
        ok = false;
        std::ostringstream os;
        os.precision(12);
        os << name << " = " << it->second << ", expected " << want;
        notes.push_back(os.str());
      }
    }
    out["status"] = status_name(r.status);
    out["values"] = r.values;
    out["notes"] = notes;
    out["ok"] = ok;
  } catch (const Error& e) {
    out["status"] = "error";
    out["values"] = json::object();
    out["notes"] = {e.what()};
    out["ok"] = false;
  }
  return out;
}

json interval_json(const Interval& i) { return json::array({i.lo, i.hi}); }

bool wanted(RunMode mode, const ScenarioCheck& ck) {
  switch (mode) {
    case RunMode::Verify: return true;
    case RunMode::Classify: return ck.kind == "classify";
    case RunMode::Soliton: return kinds().at(ck.kind).soliton;
    case RunMode::OracleDiff: return false;
  }
  return false;
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    const auto pos = msg.find("syntax error");
    if (pos != std::string::npos) msg = msg.substr(pos);
    throw ScenarioError(origin + ": line " + std::to_string(line) + ", column " + std::to_string(col) + " (offset " +
                            std::to_string(stop) + ")",
                        msg);
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(parse_json_text(ss.str(), path), path);
}

Scenario parse_scenario(const json& doc, const std::string& origin) {
  const Ctx c{origin};
  check_keys(c, doc, "",
             {"schema_version", "name", "description", "n", "fiber", "f", "t_domain", "fields", "checks", "sampling",
              "tolerances"});
  Scenario sc;
  sc.origin = origin;
  if (doc.contains("schema_version") && get_int(c, doc.at("schema_version"), "/schema_version", 0) != kSchemaVersion)
    c.fail("/schema_version", "unsupported schema version");
  if (!doc.contains("name")) c.fail("", "missing 'name'");
  sc.name = get_string(c, doc.at("name"), "/name");
  if (doc.contains("description")) sc.description = get_string(c, doc.at("description"), "/description");

  Margins margins;
  const json sampling = doc.value("sampling", json::object());
  check_keys(c, sampling, "/sampling", {"t_count", "fiber_count", "seed", "margins", "t_range", "box"});
  if (sampling.contains("margins")) {
    const json& m = sampling.at("margins");
    check_keys(c, m, "/sampling/margins", {"theta", "radius"});
    margins.theta = opt_number(c, m, "theta", "/sampling/margins", margins.theta);
    margins.radius = opt_number(c, m, "radius", "/sampling/margins", margins.radius);
  }
  if (!doc.contains("fiber")) c.fail("", "missing 'fiber'");
  sc.fiber = parse_fiber(c, doc.at("fiber"), margins);
  if (doc.contains("n") && std::size_t(get_int(c, doc.at("n"), "/n", 1)) != sc.fiber.metric.dim())
    c.fail("/n", "does not match the fiber dimension");
  if (!doc.contains("f")) c.fail("", "missing 'f'");
  sc.f = parse_warping(c, doc.at("f"));
  if (!doc.contains("t_domain")) c.fail("", "missing 't_domain'");
  const Interval dom = get_interval(c, doc.at("t_domain"), "/t_domain");
  sc.spacetime = guarded(c, "/fiber", [&] { return GRWSpacetime::make(sc.fiber.metric, sc.f, dom); });

  const double w = dom.hi - dom.lo;
  sc.region.t = {dom.lo + 0.1 * w, dom.hi - 0.1 * w};
  if (sampling.contains("t_range")) {
    sc.region.t = get_interval(c, sampling.at("t_range"), "/sampling/t_range");
    if (sc.region.t.lo < dom.lo || sc.region.t.hi > dom.hi) c.fail("/sampling/t_range", "outside t_domain");
  }
  sc.region.fiber = sc.fiber.box;
  if (sampling.contains("box")) sc.region.fiber = get_box(c, sampling.at("box"), "/sampling/box", sc.fiber.metric.dim());
  if (sc.region.fiber.size() != sc.fiber.metric.dim()) c.fail("/sampling", "inline fibers need a sampling box");
  if (sampling.contains("t_count")) sc.t_count = int(get_int(c, sampling.at("t_count"), "/sampling/t_count", 1));
  if (sampling.contains("fiber_count"))
    sc.fiber_count = int(get_int(c, sampling.at("fiber_count"), "/sampling/fiber_count", 1));
  if (sampling.contains("seed")) {
    if (!sampling.at("seed").is_number_unsigned()) c.fail("/sampling/seed", "expected a non-negative integer");
    sc.seed = sampling.at("seed").get<std::uint64_t>();
  }

  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    check_keys(c, t, "/tolerances", {"exact", "fd", "oracle_exact", "oracle_fd"});
    sc.tol.exact = opt_number(c, t, "exact", "/tolerances", sc.tol.exact);
    sc.tol.fd = opt_number(c, t, "fd", "/tolerances", sc.tol.fd);
    sc.tol.oracle_exact = opt_number(c, t, "oracle_exact", "/tolerances", sc.tol.oracle_exact);
    sc.tol.oracle_fd = opt_number(c, t, "oracle_fd", "/tolerances", sc.tol.oracle_fd);
  }

  const json fields = doc.value("fields", json::array());
  if (!fields.is_array()) c.fail("/fields", "expected an array");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const std::string path = "/fields/" + std::to_string(i);
    sc.fields.push_back(parse_field(c, fields[i], path, sc.fiber, sc.f));
    if (!ids.insert(sc.fields.back().id).second) c.fail(path + "/id", "duplicate field id");
  }
  const json checks = doc.value("checks", json::array());
  if (!checks.is_array()) c.fail("/checks", "expected an array");
  for (std::size_t i = 0; i < checks.size(); ++i)
    sc.checks.push_back(parse_check(c, checks[i], "/checks/" + std::to_string(i), sc));
  return sc;
}

json run_scenario(const Scenario& scenario, RunMode mode, const RunOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  Scenario sc = scenario;
  if (opt.seed) sc.seed = *opt.seed;
  if (opt.tol_exact) sc.tol.exact = *opt.tol_exact;
  if (opt.tol_fd) sc.tol.fd = *opt.tol_fd;
  const GRWSpacetime& s = *sc.spacetime;

  SplitMix64 master(sc.seed);
  const PointSet pts = sample_points(sc.region, sc.t_count, sc.fiber_count, master);
  std::vector<SplitMix64> streams;
  for (std::size_t i = 0; i < sc.checks.size() + sc.fields.size(); ++i) streams.push_back(master.split());

  json rep;
  rep["schema_version"] = kSchemaVersion;
  rep["tool"] = kToolName;
  rep["version"] = kToolVersion;
  rep["generator"] = "splitmix64";
  rep["seed"] = sc.seed;
  rep["mode"] = mode == RunMode::Classify ? "classify"
                : mode == RunMode::Soliton ? "soliton"
                : mode == RunMode::Verify  ? "verify"
                                           : "oracle-diff";
  rep["scenario"] = {{"name", sc.name}, {"description", sc.description}};
  json box = json::array();
  for (const auto& i : sc.region.fiber) box.push_back(interval_json(i));
  rep["spacetime"] = {{"fiber", sc.fiber.id},
                      {"coords", s.ambient().coords},
                      {"f", sc.f.to_string()},
                      {"n", s.n()},
                      {"t_domain", interval_json(s.t_domain())}};
  rep["samples"] = {{"t_count", sc.t_count},
                    {"fiber_count", sc.fiber_count},
                    {"points", pts.size()},
                    {"t_range", interval_json(sc.region.t)},
                    {"box", box}};
  rep["tolerances"] = {
      {"exact", sc.tol.exact}, {"fd", sc.tol.fd}, {"oracle_exact", sc.tol.oracle_exact}, {"oracle_fd", sc.tol.oracle_fd}};

  bool passed = true;
  json fields = json::object();
  for (std::size_t i = 0; i < sc.fields.size(); ++i) {
    const ScenarioField& fld = sc.fields[i];
    json fj;
    fj["spec"] = fld.spec;
    fj["h"] = fld.field.h.to_string();
    json zeta = json::array();
    for (const auto& comp : fld.field.zeta.components) zeta.push_back(comp.to_string());
    fj["zeta"] = zeta;
    try {
      if (mode == RunMode::Classify || mode == RunMode::Verify) {
        fj["classification"] = verdicts_json(classify(s, fld.id, fld.field, pts, sc.tol));
      } else if (mode == RunMode::OracleDiff) {
        const OracleDiff d = oracle_diff(s, fld.field, pts);
        const bool ok = d.within(sc.tol);
        fj["oracle_diff"] = {{"deviation", d.deviation}, {"points", d.points}, {"ok", ok}};
        passed = passed && ok;
      } else if (opt.lambda || opt.fit_lambda) {
        ScenarioCheck ck;
        ck.kind = "soliton";
        ck.path = "/fields/" + std::to_string(i);
        ck.field = fld.id;
        ck.params = opt.fit_lambda ? json{{"fit_lambda", true}} : json{{"lambda", *opt.lambda}};
        json r = check_json(sc, ck, pts, streams[sc.checks.size() + i]);
        r.erase("expected");
        r["ok"] = r["status"] == "pass";
        passed = passed && r["ok"].get<bool>();
        fj["soliton"] = r;
      }
    } catch (const Error& e) {
      fj["error"] = e.what();
      passed = false;
    }
    fields[fld.id] = fj;
  }
  rep["fields"] = fields;

  json checks = json::array();
  for (std::size_t i = 0; i < sc.checks.size(); ++i) {
    if (!wanted(mode, sc.checks[i])) continue;
    json r = check_json(sc, sc.checks[i], pts, streams[i]);
    passed = passed && r["ok"].get<bool>();
    checks.push_back(std::move(r));
  }
  rep["checks"] = checks;
  rep["passed"] = passed;
  if (opt.timing)
    rep["timing_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

const json& catalog_scenario(const std::string& name) {
  for (const auto& s : catalog_scenarios())
    if (s.at("name") == name) return s;
  throw ScenarioError("catalog", "no built-in scenario named '" + name + "'");
}

json run_all_catalog(const RunOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  RunOptions inner = opt;
  inner.timing = false;
  json out;
  out["schema_version"] = kSchemaVersion;
  out["tool"] = kToolName;
  out["version"] = kToolVersion;
  json reports = json::array();
  json failed = json::array();
  std::size_t n_checks = 0;
  for (const auto& doc : catalog_scenarios()) {
    const std::string name = doc.at("name").get<std::string>();
    json r = run_scenario(parse_scenario(doc, "catalog:" + name), RunMode::Verify, inner);
    n_checks += r["checks"].size();
    if (!r["passed"].get<bool>()) failed.push_back(name);
    reports.push_back(std::move(r));
  }
  out["scenarios"] = reports;
  out["summary"] = {{"scenarios", reports.size()}, {"checks", n_checks}, {"failed", failed}};
  out["passed"] = failed.empty();
  if (opt.timing)
    out["timing_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace grwsym
