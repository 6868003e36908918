#pragma once

#include <string>
#include <vector>

#include "pivasym/common.hpp"

namespace pivasym {

struct SuiteResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;  // largest residual seen
  double tol = 0.0;
  std::string detail;
};

// Self-consistency suites of the library (its own orientation and sign
// conventions).
SuiteResult suite_legendre(int points = 20);
SuiteResult suite_theta();
SuiteResult suite_residues();
SuiteResult suite_gamma();
SuiteResult suite_third_kind();
SuiteResult suite_w_integrals();
SuiteResult suite_m0();

std::vector<SuiteResult> all_suites();

}  // namespace pivasym
