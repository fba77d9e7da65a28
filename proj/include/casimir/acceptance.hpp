#pragma once

// The numbered acceptance checks, shared by `casimir verify` and the
// acceptance test binary.

#include <string>
#include <vector>

namespace casimir::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured values against the bound
  double seconds = 0.0;
  double budget = 0.0;  // allowed runtime
};

CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_all();
constexpr int kCriteria = 10;

/// "PASS  3  name  (1.23 s)  detail"
std::string format(const CriterionResult& r);

}  // namespace casimir::acceptance
