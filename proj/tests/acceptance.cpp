#include <iostream>

#include "iwz/selftest.hpp"

int main() {
  iwz::SelftestOptions opt;
  auto results = iwz::run_acceptance(opt, std::cerr);
  int failed = 0;
  for (const auto& r : results) {
    std::cout << iwz::format_result(r) << "\n";
    failed += !r.pass;
  }
  std::cout << (failed ? "acceptance: FAIL" : "acceptance: PASS") << " (" << results.size() - failed << "/"
            << results.size() << ")\n";
  return failed ? 1 : 0;
}
