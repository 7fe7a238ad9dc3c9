#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grwsym/catalog.hpp"
#include "grwsym/check.hpp"
#include "grwsym/errors.hpp"
#include "grwsym/grw.hpp"
#include "grwsym/sampling.hpp"

namespace grwsym {

inline constexpr const char* kToolName = "grwsym";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Invalid scenario input. `where()` is "<origin>: line L, column C" for JSON
/// syntax errors and "<origin>: <json pointer>" for semantic errors.
class ScenarioError : public Error {
 public:
  ScenarioError(std::string where, const std::string& message)
      : Error(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

struct ScenarioField {
  std::string id;
  SplitVector field;
  nlohmann::json spec;  // as written in the scenario
};

struct ScenarioCheck {
  std::string kind;
  std::string path;    // JSON pointer of the entry
  std::string field;   // empty when the check takes `h`
  std::optional<ScalarExpr> h;
  std::string expect = "pass";  // pass | fail | vacuous
  std::map<std::string, double> expect_values;
  std::optional<double> value_tol;
  nlohmann::json params;  // remaining kind-specific keys, already validated
};

struct Scenario {
  std::string origin;  // file name or "catalog:<name>"
  std::string name;
  std::string description;
  FiberEntry fiber;
  ScalarExpr f;
  std::optional<GRWSpacetime> spacetime;
  std::vector<ScenarioField> fields;
  std::vector<ScenarioCheck> checks;
  SampleRegion region;
  int t_count = 6;
  int fiber_count = 4;
  std::uint64_t seed = 20240601;
  Tolerances tol;
};

/// Validates every key; unknown keys and bad expressions raise ScenarioError.
Scenario parse_scenario(const nlohmann::json& doc, const std::string& origin);
/// Reads and parses a scenario file.
Scenario load_scenario(const std::string& path);
/// Parses JSON text, mapping syntax errors to line and column.
nlohmann::json parse_json_text(const std::string& text, const std::string& origin);

enum class RunMode { Classify, Soliton, Verify, OracleDiff };

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_exact;
  std::optional<double> tol_fd;
  std::optional<double> lambda;  // soliton mode: check every field at this lambda
  bool fit_lambda = false;       // soliton mode: fit lambda per field
  bool timing = false;           // adds wall-clock seconds to the report
};

/// Report object with sorted keys; report["passed"] is the verdict.
nlohmann::json run_scenario(const Scenario& sc, RunMode mode, const RunOptions& opt = {});

/// Built-in scenarios, as the JSON documents a user would write.
const std::vector<nlohmann::json>& catalog_scenarios();
const nlohmann::json& catalog_scenario(const std::string& name);

/// Runs every built-in scenario in verify mode.
nlohmann::json run_all_catalog(const RunOptions& opt = {});

}  // namespace grwsym
