#include "grwsym/scenario.hpp"

namespace grwsym {

namespace {

// Each entry is a scenario document exactly as a user would write it.
constexpr const char* kScenarios[] = {
    R"json({
  "name": "comoving_conformal",
  "description": "h d_t on de Sitter in flat slicing: conformal exactly when h is a constant multiple of f",
  "fiber": {"catalog": "euclidean", "n": 2},
  "f": {"catalog": "exp"},
  "t_domain": [-1, 1],
  "fields": [
    {"id": "comoving", "catalog": "comoving"},
    {"id": "triple", "catalog": "dt_scaled", "h": "3*exp(t)"},
    {"id": "t_times_f", "catalog": "dt_scaled", "h": "t*exp(t)"}
  ],
  "checks": [
    {"check": "classify", "field": "comoving", "rho": "2*exp(t)",
     "expect_flags": {"conformal": true, "homothetic": false, "killing": false, "concircular": true}},
    {"check": "classify", "field": "t_times_f", "expect_flags": {"conformal": false}},
    {"check": "timelike_conformal", "h": "3*exp(t)", "expect_values": {"a": 3, "conformal": 1}},
    {"check": "timelike_conformal", "h": "0.5*exp(t)", "expect_values": {"a": 0.5, "conformal": 1}},
    {"check": "timelike_conformal", "h": "0", "expect_values": {"a": 0, "conformal": 1}},
    {"check": "timelike_conformal", "h": "t*exp(t)", "expect_values": {"conformal": 0, "proportional": 0}},
    {"check": "timelike_conformal", "h": "exp(t) + 0.1*t", "expect_values": {"conformal": 0, "proportional": 0}},
    {"check": "projected_conformal", "field": "triple"},
    {"check": "projected_conformal", "field": "t_times_f", "expect": "vacuous"},
    {"check": "conformal_factor_along_curves", "field": "comoving"},
    {"check": "matter_collineation", "field": "comoving", "expect": "fail"},
    {"check": "matter_collineation", "field": "comoving", "lambda_cosmo": 1},
    {"check": "oracle_equivalence", "field": "triple"}
  ]
})json",
    R"json({
  "name": "fiber_killing_sphere",
  "description": "rotation of the round 2-sphere under f = cosh t",
  "fiber": {"catalog": "sphere", "n": 2},
  "f": {"catalog": "cosh"},
  "t_domain": [-1, 1],
  "fields": [{"id": "rotation", "catalog": "fiber_rotation"}],
  "checks": [
    {"check": "classify", "field": "rotation", "rho": "0",
     "expect_flags": {"killing": true, "homothetic": true, "conformal": true, "concircular": false,
                      "curvature_collineation": true, "ricci_collineation": true,
                      "conformal_ricci_collineation": true, "matter_collineation": true, "two_killing": true}},
    {"check": "projected_conformal", "field": "rotation"},
    {"check": "constant_length_killing", "field": "rotation", "expect_values": {"constant_length": 0}},
    {"check": "killing_length_laplacian", "field": "rotation"},
    {"check": "fiber_killing_cc", "field": "rotation"},
    {"check": "conformal_rc", "field": "rotation"},
    {"check": "implication_chain", "field": "rotation"},
    {"check": "conformal_factor_along_curves", "field": "rotation"},
    {"check": "jacobi", "field": "rotation"},
    {"check": "oracle_equivalence", "field": "rotation"}
  ]
})json",
    R"json({
  "name": "static_homothety",
  "description": "Z = t d_t + x d_x + y d_y on flat space with f = 1: homothetic and concircular",
  "fiber": {"catalog": "euclidean", "n": 2},
  "f": "1",
  "t_domain": [-1, 1],
  "fields": [{"id": "position", "h": "t", "zeta": ["x", "y"]}],
  "checks": [
    {"check": "classify", "field": "position", "rho": "2",
     "expect_flags": {"conformal": true, "homothetic": true, "killing": false, "concircular": true,
                      "curvature_collineation": true, "ricci_collineation": true, "two_killing": false}},
    {"check": "projected_conformal", "field": "position"},
    {"check": "concircular", "field": "position", "expect_values": {"concircular": 1, "rho_mean": 1}},
    {"check": "concircular_curvature", "field": "position"},
    {"check": "conformal_factor_along_curves", "field": "position"},
    {"check": "constant_length_killing", "field": "position", "expect": "vacuous"}
  ]
})json",
    R"json({
  "name": "warped_position_not_conformal",
  "description": "Z = e^t d_t + x d_x + y d_y with f = e^t is neither conformal nor concircular",
  "fiber": {"catalog": "euclidean", "n": 2},
  "f": {"catalog": "exp"},
  "t_domain": [-1, 1],
  "fields": [{"id": "z", "h": "exp(t)", "zeta": ["x", "y"]}],
  "checks": [
    {"check": "classify", "field": "z", "expect_flags": {"conformal": false, "concircular": false}},
    {"check": "projected_conformal", "field": "z", "expect": "vacuous"},
    {"check": "conformal_factor_along_curves", "field": "z", "expect": "vacuous"},
    {"check": "concircular", "field": "z", "expect_values": {"concircular": 0, "dichotomy_side": 0}},
    {"check": "concircular_curvature", "field": "z", "expect": "vacuous"}
  ]
})json",
    R"json({
  "name": "killing_flat",
  "description": "Killing fields of flat space with f = 1: constant length and the length Laplacian",
  "fiber": {"catalog": "euclidean", "n": 2},
  "f": {"catalog": "one"},
  "t_domain": [-1, 1],
  "fields": [
    {"id": "translation", "catalog": "fiber_translation", "index": 0},
    {"id": "rotation", "catalog": "fiber_rotation"},
    {"id": "zero", "catalog": "zero"},
    {"id": "time", "catalog": "dt_scaled", "h": "1"},
    {"id": "boost_free_sum", "h": "1", "zeta": ["1 - y", "x"]}
  ],
  "checks": [
    {"check": "constant_length_killing", "field": "translation", "expect_values": {"constant_length": 1, "conditions_hold": 1}},
    {"check": "constant_length_killing", "field": "rotation", "expect_values": {"constant_length": 0, "conditions_hold": 0}},
    {"check": "constant_length_killing", "field": "zero", "expect_values": {"constant_length": 1}},
    {"check": "constant_length_killing", "field": "time", "expect_values": {"constant_length": 1}},
    {"check": "constant_length_killing", "field": "boost_free_sum", "expect_values": {"constant_length": 0}},
    {"check": "killing_length_laplacian", "field": "translation"},
    {"check": "killing_length_laplacian", "field": "rotation"},
    {"check": "killing_length_laplacian", "field": "time"},
    {"check": "killing_length_laplacian", "field": "boost_free_sum"},
    {"check": "implication_chain", "field": "rotation"},
    {"check": "two_killing", "field": "rotation"},
    {"check": "matter_collineation", "field": "rotation"},
    {"check": "jacobi", "field": "rotation", "p0": [0, 0.3, -0.2], "v0": [1, 0.4, 0.1], "steps": 200, "dt": 0.005}
  ]
})json",
    R"json({
  "name": "killing_sphere_static",
  "description": "rotation of the unit 2-sphere with f = 1",
  "fiber": {"catalog": "sphere", "n": 2},
  "f": "1",
  "t_domain": [-1, 1],
  "fields": [
    {"id": "rotation", "catalog": "fiber_rotation"},
    {"id": "wobble", "h": "0", "zeta": ["sin(ph)", "0"]}
  ],
  "checks": [
    {"check": "constant_length_killing", "field": "rotation", "expect_values": {"constant_length": 0}},
    {"check": "killing_length_laplacian", "field": "rotation"},
    {"check": "concircular", "field": "rotation", "expect_values": {"concircular": 0}},
    {"check": "concircular_curvature", "field": "rotation", "expect": "vacuous"},
    {"check": "rc_fdiamond_equivalence", "field": "rotation"},
    {"check": "rc_fdiamond_equivalence", "field": "wobble"},
    {"check": "conformal_rc", "field": "rotation"},
    {"check": "two_killing", "field": "wobble", "expect": "fail"}
  ]
})json",
    R"json({
  "name": "cc_timelike",
  "description": "curvature collineations h d_t: the ODE h f' f'' + h f f''' + 2 h' f f'' = 0",
  "fiber": {"catalog": "euclidean", "n": 2},
  "f": {"catalog": "exp"},
  "t_domain": [-1, 1],
  "fields": [{"id": "unit_time", "catalog": "dt_scaled", "h": "1"}],
  "checks": [
    {"check": "timelike_cc_ode", "h": "1", "expect_values": {"ode_holds": 0, "collineation": 0}},
    {"check": "curvature_collineation", "field": "unit_time", "expect": "fail"}
  ]
})json",
    R"json({
  "name": "cc_static_flat",
  "description": "f = 1 over flat space: every h d_t is a curvature collineation and the ODE is trivial",
  "fiber": {"catalog": "euclidean", "n": 2},
  "f": "1",
  "t_domain": [-1, 1],
  "checks": [
    {"check": "timelike_cc_ode", "h": "t^2", "expect_values": {"ode_holds": 1, "collineation": 1}},
    {"check": "timelike_cc_ode", "h": "sin(t)", "expect_values": {"ode_holds": 1, "collineation": 1}}
  ]
})json",
    R"json({
  "name": "cc_milne",
  "description": "f = t over the hyperbolic plane (flat Milne patch): every h d_t is a curvature collineation",
  "fiber": {"catalog": "hyperbolic", "n": 2},
  "f": {"catalog": "linear", "a": 1, "b": 0},
  "t_domain": [0.5, 2.5],
  "checks": [
    {"check": "timelike_cc_ode", "h": "t^2", "expect_values": {"ode_holds": 1, "collineation": 1}},
    {"check": "timelike_cc_ode", "h": "exp(t)", "expect_values": {"ode_holds": 1, "collineation": 1}}
  ]
})json",
    R"json({
  "name": "cc_gap_flat_linear",
  "description": "f = t over flat space: the ODE holds but h d_t is not a curvature collineation",
  "fiber": {"catalog": "euclidean", "n": 2},
  "f": {"catalog": "linear", "a": 1, "b": 0},
  "t_domain": [0.5, 2.5],
  "checks": [
    {"check": "timelike_cc_ode", "h": "1", "expect": "fail", "expect_values": {"ode_holds": 1, "collineation": 0}}
  ]
})json",
    R"json({
  "name": "rc_dichotomy",
  "description": "Ricci collineations h d_t with f'' = 0 or h proportional to f^n",
  "fiber": {"catalog": "euclidean", "n": 2},
  "f": {"catalog": "linear", "a": 1, "b": 0},
  "t_domain": [0.5, 2.5],
  "checks": [
    {"check": "rc_dichotomy", "h": "t^2", "expect_values": {"hessian_zero": 1}},
    {"check": "rc_dichotomy", "h": "exp(t)", "expect_values": {"hessian_zero": 1}}
  ]
})json",
    R"json({
  "name": "rc_power",
  "description": "f = t^(1/2), h = t on a flat 2-dimensional fiber: a Ricci collineation with h = f^n",
  "fiber": {"catalog": "euclidean", "n": 2},
  "f": {"catalog": "power", "p": 0.5},
  "t_domain": [0.5, 2.5],
  "fields": [{"id": "z", "catalog": "dt_scaled", "h": "t"}],
  "checks": [
    {"check": "rc_dichotomy", "h": "t", "expect_values": {"hessian_zero": 0, "proportional": 1, "a": 1}},
    {"check": "ricci_collineation", "field": "z"},
    {"check": "oracle_equivalence", "field": "z"}
  ]
})json",
    R"json({
  "name": "rc_exp",
  "description": "f = e^t: neither h = e^(2t) nor h = 1 gives a Ricci collineation",
  "fiber": {"catalog": "euclidean", "n": 2},
  "f": {"catalog": "exp"},
  "t_domain": [-1, 1],
  "checks": [
    {"check": "rc_dichotomy", "h": "exp(2*t)", "expect": "vacuous", "expect_values": {"a": 1, "proportional": 1}},
    {"check": "rc_dichotomy", "h": "1", "expect": "vacuous", "expect_values": {"proportional": 0}}
  ]
})json",
    R"json({
  "name": "conformal_rc_cosh",
  "description": "fiber rotation on S^2 under f = cosh t, where f<> never vanishes",
  "fiber": {"catalog": "sphere", "n": 2},
  "f": {"catalog": "cosh"},
  "t_domain": [-1, 1],
  "fields": [
    {"id": "rotation", "catalog": "fiber_rotation"},
    {"id": "comoving", "catalog": "comoving"}
  ],
  "checks": [
    {"check": "conformal_rc", "field": "rotation"},
    {"check": "rc_fdiamond_equivalence", "field": "rotation", "expect": "vacuous"},
    {"check": "conformal_rc", "field": "comoving", "expect": "vacuous"}
  ]
})json",
    R"json({
  "name": "oracle_frw_closed",
  "description": "closed FRW slice under f = e^t with a generic field, against the chart computation",
  "fiber": {"catalog": "frw_spatial", "k": 1},
  "f": {"catalog": "exp"},
  "t_domain": [-1, 1],
  "sampling": {"t_count": 4, "fiber_count": 3},
  "fields": [
    {"id": "generic", "h": "cos(t) + 0.1*t^2", "zeta": ["0.2*th^2 + sin(r)/2", "0.2*ph^2 + sin(th)/2", "0.2*r^2 + sin(ph)/2"]},
    {"id": "rotation", "catalog": "fiber_rotation"}
  ],
  "checks": [
    {"check": "oracle_equivalence", "field": "generic"},
    {"check": "oracle_equivalence", "field": "rotation"},
    {"check": "fiber_killing_cc", "field": "rotation"},
    {"check": "implication_chain", "field": "generic"}
  ]
})json",
    R"json({
  "name": "soliton_gaussian",
  "description": "Z = c (t d_t + x d_x + y d_y) on flat space with f = 1 is a soliton with lambda = c",
  "fiber": {"catalog": "euclidean", "n": 2},
  "f": "1",
  "t_domain": [-1, 1],
  "fields": [{"id": "gauss", "catalog": "gaussian_analogue", "c": 1.5}],
  "checks": [
    {"check": "soliton", "field": "gauss", "lambda": 1.5},
    {"check": "soliton", "field": "gauss", "fit_lambda": true, "expect_values": {"lambda": 1.5}},
    {"check": "soliton", "field": "gauss", "lambda": 1.0, "expect": "fail"},
    {"check": "induced_fiber_soliton", "field": "gauss", "lambda": 1.5, "expect_values": {"mu": 1.5, "mu_constant": 1}},
    {"check": "einstein_fiber", "field": "gauss", "lambda": 1.5, "expect_values": {"rho_mean": 3, "half_rho_mean": 1.5}},
    {"check": "conformal_from_einstein", "field": "gauss", "lambda": 1.5, "expect_values": {"rho_mean": 3}},
    {"check": "sufficient_conditions", "field": "gauss", "sigma": "1.5", "rho": "1.5", "mu": 0,
     "expect_values": {"lambda": 1.5}},
    {"check": "concircular_soliton_ricci_flat", "field": "gauss", "lambda": 1.5, "expect": "vacuous"},
    {"check": "two_killing_soliton", "field": "gauss", "lambda": 1.5, "expect": "vacuous"}
  ]
})json",
    R"json({
  "name": "soliton_concircular",
  "description": "Z = t d_t + x d_x + y d_y with f = 1: concircular with factor one, soliton with lambda = 1",
  "fiber": {"catalog": "euclidean", "n": 2},
  "f": "1",
  "t_domain": [-1, 1],
  "fields": [{"id": "position", "catalog": "gaussian_analogue", "c": 1}],
  "checks": [
    {"check": "concircular_soliton_ricci_flat", "field": "position", "lambda": 1},
    {"check": "einstein_fiber", "field": "position", "lambda": 1, "expect_values": {"half_rho_mean": 1}}
  ]
})json",
    R"json({
  "name": "soliton_de_sitter",
  "description": "de Sitter in flat slicing (f = e^t, n = 3) with Z = 0 is a soliton with lambda = 3",
  "fiber": {"catalog": "euclidean", "n": 3},
  "f": {"catalog": "exp"},
  "t_domain": [-1, 1],
  "fields": [{"id": "zero", "catalog": "zero"}],
  "checks": [
    {"check": "soliton", "field": "zero", "lambda": 3},
    {"check": "soliton", "field": "zero", "lambda": 2, "expect": "fail"},
    {"check": "soliton", "field": "zero", "fit_lambda": true, "expect_values": {"lambda": 3}},
    {"check": "induced_fiber_soliton", "field": "zero", "lambda": 3, "expect_values": {"mu": 0}},
    {"check": "einstein_fiber", "field": "zero", "lambda": 3,
     "expect_values": {"killing_lambda_error": 0, "killing_lambda_error_negated": 6}},
    {"check": "two_killing_soliton", "field": "zero", "lambda": 3}
  ]
})json",
    R"json({
  "name": "soliton_killing_flat",
  "description": "rotation of flat space with f = 1: a Killing soliton with lambda = 0 = n f''/f",
  "fiber": {"catalog": "euclidean", "n": 2},
  "f": "1",
  "t_domain": [-1, 1],
  "fields": [{"id": "rotation", "catalog": "fiber_rotation"}],
  "checks": [
    {"check": "einstein_fiber", "field": "rotation", "lambda": 0,
     "expect_values": {"killing_lambda_error": 0, "killing_lambda_error_negated": 0}},
    {"check": "two_killing_soliton", "field": "rotation", "lambda": 0}
  ]
})json",
    R"json({
  "name": "soliton_milne",
  "description": "Milne patch f = t over the hyperbolic plane: Z = t d_t + d_x satisfies the sufficient conditions",
  "fiber": {"catalog": "hyperbolic", "n": 2},
  "f": {"catalog": "linear", "a": 1, "b": 0},
  "t_domain": [0.5, 2.5],
  "fields": [{"id": "z", "h": "t", "zeta": ["1", "0"]}],
  "checks": [
    {"check": "sufficient_conditions", "field": "z", "sigma": "1", "rho": "0", "mu": -1, "expect_values": {"lambda": 1}},
    {"check": "soliton", "field": "z", "lambda": 1},
    {"check": "conformal_from_einstein", "field": "z", "lambda": 1, "expect_values": {"rho_mean": 2}},
    {"check": "einstein_fiber", "field": "z", "lambda": 1},
    {"check": "induced_fiber_soliton", "field": "z", "lambda": 1, "expect_values": {"mu": -1}}
  ]
})json",
    R"json({
  "name": "concircular_soliton_milne_gap",
  "description": "Z = t d_t on the Milne patch meets every hypothesis of the Ricci-flat fiber claim, yet the fiber has Ric = -g",
  "fiber": {"catalog": "hyperbolic", "n": 2},
  "f": {"catalog": "linear", "a": 1, "b": 0},
  "t_domain": [0.5, 2.5],
  "fields": [{"id": "z", "catalog": "dt_scaled", "h": "t"}],
  "checks": [
    {"check": "soliton", "field": "z", "lambda": 1},
    {"check": "concircular_soliton_ricci_flat", "field": "z", "lambda": 1, "expect": "fail",
     "expect_values": {"bracket_mean": -1}}
  ]
})json",
};

}  // namespace

const std::vector<nlohmann::json>& catalog_scenarios() {
  static const std::vector<nlohmann::json> all = [] {
    std::vector<nlohmann::json> v;
    for (const char* s : kScenarios) v.push_back(nlohmann::json::parse(s));
    return v;
  }();
  return all;
}

}  // namespace grwsym
