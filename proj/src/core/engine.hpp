#ifndef FBH_CORE_ENGINE_HPP
#define FBH_CORE_ENGINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "core/families.hpp"

namespace fbh {

// Exit-code contract shared by the library boundary and the CLI:
// 0 pass, 1 claim violated, 2 usage error.
enum ExitCode { kPass = 0, kClaimFailed = 1, kUsage = 2 };

struct RunConfig {
  std::string command;  // verify | curvature | ansatz | selftest
  // verify: either a family or custom expressions
  std::string family;
  int m = 0;
  std::string sigma_text;
  std::string f_text;
  std::string hyperplane_text;  // "a1,...,am;a_{m+1}"
  std::string immersion_text;   // "expr1|...|expr_{m+1}"
  std::map<std::string, double> params;
  std::vector<std::string> guard_texts;
  // sampling
  int samples = 100;
  std::uint64_t seed = 1;
  double tol_verify = 1e-8;
  double tol_falsify = 1e-3;
  std::optional<std::pair<double, double>> box;  // uniform per-coordinate bounds
  int jobs = 1;
  // curvature
  int n = 0;
  std::string expect;  // negative | zero | positive
  double tol_zero = 1e-10;
  // ansatz
  std::string equation;  // pq1 | pc1
  // output
  std::string format = "text";  // text | json | csv

  static RunConfig from_json(const std::string& command, const std::string& json_text);
};

struct RunResult {
  int exit_code = kPass;
  std::string report;
};

RunResult run(const RunConfig& cfg);

// selftest suites, reusable from tests
struct SuiteResult {
  std::string name;
  bool pass = true;
  std::string detail;
};
std::vector<SuiteResult> run_selftest_suites(std::uint64_t seed);

}  // namespace fbh

#endif
