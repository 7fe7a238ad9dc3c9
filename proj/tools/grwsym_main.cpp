// grwsym: symmetry and soliton checks on generalized Robertson-Walker spacetimes.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "grwsym/catalog.hpp"
#include "grwsym/scenario.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

grwsym::Scenario load(const std::string& arg) {
  const std::string prefix = "catalog:";
  if (arg.rfind(prefix, 0) == 0) {
    const std::string name = arg.substr(prefix.size());
    return grwsym::parse_scenario(grwsym::catalog_scenario(name), arg);
  }
  return grwsym::load_scenario(arg);
}

std::optional<double> env_double(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const double d = std::strtod(v, &end);
  if (*end != '\0' || !(d > 0)) throw grwsym::ScenarioError(name, "expected a positive number, got '" + std::string(v) + "'");
  return d;
}

int emit(const nlohmann::json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "grwsym: cannot write " << out << "\n";
      return kExitInput;
    }
    f << text;
  }
  return report.at("passed").get<bool>() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetry and soliton verification on generalized Robertson-Walker spacetimes", "grwsym"};
  app.set_version_flag("--version", std::string(grwsym::kToolVersion));
  app.require_subcommand(1);

  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_exact, tol_fd;
  bool timing = false;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--out,-o", out, "Write the JSON report here instead of stdout");
    sub->add_option("--seed", seed, "Override the scenario seed");
    sub->add_option("--tol-exact", tol_exact, "Tolerance for jet-only quantities (env GRWSYM_TOL_EXACT)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol-fd", tol_fd, "Tolerance for finite-difference quantities (env GRWSYM_TOL_FD)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--timing", timing, "Add wall-clock seconds to the report");
  };

  std::string scenario;
  auto* classify = app.add_subcommand("classify", "Classify every field of a scenario");
  classify->add_option("scenario", scenario, "Scenario file or catalog:<name>")->required();
  common(classify);

  std::optional<double> lambda;
  bool fit = false;
  auto* soliton = app.add_subcommand("soliton", "Run soliton checks, optionally at a given or fitted lambda");
  soliton->add_option("scenario", scenario, "Scenario file or catalog:<name>")->required();
  auto* lam = soliton->add_option("--lambda", lambda, "Check 1/2 L_Z g + Ric = lambda g for every field");
  soliton->add_flag("--fit-lambda", fit, "Fit lambda by least squares for every field")->excludes(lam);
  common(soliton);

  bool all_catalog = false;
  auto* verify = app.add_subcommand("verify", "Run every check of a scenario");
  auto* scen_opt = verify->add_option("scenario", scenario, "Scenario file or catalog:<name>");
  verify->add_flag("--all-catalog", all_catalog, "Run every built-in scenario")->excludes(scen_opt);
  common(verify);

  auto* oracle = app.add_subcommand("oracle-diff", "Compare closed forms with the chart computation");
  oracle->add_option("scenario", scenario, "Scenario file or catalog:<name>")->required();
  common(oracle);

  auto* catalog = app.add_subcommand("catalog", "Built-in fibers, warpings, fields and scenarios");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "List catalog entries");
  std::string show_name;
  auto* show = catalog->add_subcommand("show", "Print a built-in scenario as JSON");
  show->add_option("name", show_name, "Scenario name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (list->parsed()) {
      for (const auto& e : grwsym::catalog_listing()) std::cout << e.kind << "\t" << e.id << "\t" << e.description << "\n";
      return kExitPass;
    }
    if (show->parsed()) {
      std::cout << grwsym::catalog_scenario(show_name).dump(2) << "\n";
      return kExitPass;
    }

    grwsym::RunOptions opt;
    opt.seed = seed;
    opt.tol_exact = tol_exact ? tol_exact : env_double("GRWSYM_TOL_EXACT");
    opt.tol_fd = tol_fd ? tol_fd : env_double("GRWSYM_TOL_FD");
    opt.timing = timing;

    if (verify->parsed() && all_catalog) return emit(grwsym::run_all_catalog(opt), out);
    if (verify->parsed() && scenario.empty()) {
      std::cerr << "grwsym verify: give a scenario or --all-catalog\n";
      return kExitInput;
    }
    const grwsym::Scenario sc = load(scenario);
    grwsym::RunMode mode = grwsym::RunMode::Verify;
    if (classify->parsed()) mode = grwsym::RunMode::Classify;
    if (oracle->parsed()) mode = grwsym::RunMode::OracleDiff;
    if (soliton->parsed()) {
      mode = grwsym::RunMode::Soliton;
      opt.lambda = lambda;
      opt.fit_lambda = fit;
    }
    return emit(grwsym::run_scenario(sc, mode, opt), out);
  } catch (const grwsym::ScenarioError& e) {
    std::cerr << "grwsym: " << e.what() << "\n";
    return kExitInput;
  } catch (const grwsym::Error& e) {
    std::cerr << "grwsym: " << e.what() << "\n";
    return kExitInput;
  }
}
