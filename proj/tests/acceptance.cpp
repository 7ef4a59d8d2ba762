// Acceptance runner: one line per criterion, exit code = number of failures.
// An optional argument overrides the seed of the randomized criteria.

#include <cstdlib>
#include <iostream>
#include <vector>

#include "nielsen/verification.hpp"

int main(int argc, char** argv) {
  using namespace nielsen;
  unsigned seed = 12345;
  if (argc > 1) seed = static_cast<unsigned>(std::strtoul(argv[1], nullptr, 10));

  std::vector<CheckResult> results;
  results.push_back(checks::check_presentation({5, 6, 7, 8}));
  // The rank-5 theorem runs under a one-minute budget, rank 6 under fifteen
  // minutes; both must hold.
  results.push_back(checks::guarded("main-theorem", [] {
    CheckResult five = checks::check_main_theorem(5, 60.0);
    CheckResult six = checks::check_main_theorem(6, 900.0);
    return CheckResult{"", five.pass && six.pass, five.detail + " | " + six.detail};
  }));
  results.push_back(checks::check_fixtures(5));
  results.push_back(checks::check_johnson_values(5));
  results.push_back(checks::check_generation(5));
  results.push_back(checks::check_nonextendability(5));
  results.push_back(checks::check_outer(5));
  results.push_back(checks::check_property_suite(seed));
  results.push_back(checks::check_snf(seed));

  int failed = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    const CheckResult& r = results[i];
    if (!r.pass) ++failed;
    std::cout << "criterion " << (i + 1) << " [" << r.name << "]: "
              << (r.pass ? "PASS" : "FAIL") << " (" << r.detail << ")\n";
  }
  std::cout << (results.size() - failed) << " of " << results.size()
            << " criteria pass\n";
  return failed;
}
