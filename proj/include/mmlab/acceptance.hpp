#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mmlab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool checks_pass = false;  // the numerical checks alone
  bool within_time = false;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0 means none
  std::string detail;

  bool pass() const { return checks_pass && within_time; }
};

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  /// Per-criterion CSVs go here; empty means a fresh directory under the
  /// system temp dir (needed anyway by the determinism criterion).
  std::string out_dir;
  unsigned threads = 0;
  /// Receives one line per finished criterion when non-null.
  std::ostream* progress = nullptr;
};

/// Criterion ids of a suite: metric 1-3, diagnostics 4-7, genealogy 8-13,
/// all 1-14. std::invalid_argument for anything else.
std::vector<int> suite_criteria(const std::string& suite);

std::vector<CriterionResult> run_acceptance(const std::string& suite, const AcceptanceOptions& opts);

/// "CRITERION <id> PASS|FAIL <name> (<seconds> s) <detail>".
std::string format_result(const CriterionResult& r);

}  // namespace mmlab
