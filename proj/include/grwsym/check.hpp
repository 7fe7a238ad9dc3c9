#pragma once

#include <map>
#include <string>
#include <vector>

namespace grwsym {

struct Tolerances {
  double exact = 1e-8;  // quantities computed with jets only
  double fd = 1e-6;     // quantities that pass through a finite difference
  double oracle_exact = 1e-6;  // closed form vs chart oracle, jet-only forms
  double oracle_fd = 1e-4;     // closed form vs chart oracle, Lie curvature forms
};

enum class Status { Pass, Fail, Vacuous };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Vacuous: return "vacuous";
  }
  return "fail";
}

/// Outcome of one theorem check. `values` holds residuals and extracted
/// constants keyed by name; Vacuous means the hypotheses did not hold at
/// the samples, so nothing was asserted.
struct CheckResult {
  std::string name;
  Status status = Status::Pass;
  std::map<std::string, double> values;
  std::vector<std::string> notes;

  bool passed() const { return status != Status::Fail; }
  void require(bool ok, const std::string& note) {
    if (!ok) {
      status = Status::Fail;
      notes.push_back(note);
    }
  }
  void vacuous(const std::string& note) {
    status = Status::Vacuous;
    notes.push_back(note);
  }
};

}  // namespace grwsym
