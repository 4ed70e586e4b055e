#ifndef SQGLC_SUITES_HPP_
#define SQGLC_SUITES_HPP_

#include <string>
#include <vector>

namespace sqglc {

// One pass/fail line of a verification suite, as printed by the CLI and by
// the acceptance runner.
struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Property suites over the documented desk-scale corpus.  When out_dir is
// non-empty each suite writes its ratio table as a CSV there.
std::vector<SuiteResult> run_kernel_suite(double a, const std::string& out_dir);
std::vector<SuiteResult> run_riesz_suite(double a, const std::string& out_dir);
std::vector<SuiteResult> run_poincare_suite(double a, const std::string& out_dir);
std::vector<SuiteResult> run_hedberg_suite(double a, const std::string& out_dir);

}  // namespace sqglc

#endif
