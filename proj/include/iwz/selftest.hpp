#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace iwz {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct SelftestOptions {
  int workers = 0;
  std::vector<int> only;  // empty: all criteria
};

// Runs the acceptance criteria in order; progress goes to log.
std::vector<CriterionResult> run_acceptance(const SelftestOptions& opt, std::ostream& log);
std::string format_result(const CriterionResult& r);

}  // namespace iwz
