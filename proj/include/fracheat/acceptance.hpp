#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace fracheat {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20241016;
};

/// One line: "criterion <id> PASS|FAIL <name>: <detail>".
std::string render_line(const CriterionResult& r);

/// Criteria 1 to 9 individually.
CriterionResult run_criterion(int id, const AcceptanceOptions& options);

struct AcceptanceReport {
  std::vector<CriterionResult> results;
  bool all_passed() const;
  std::string render() const;
};

/// Runs criteria 1-9 twice; criterion 10 compares the two rendered reports
/// byte for byte. Lines are streamed to `progress` as they complete.
AcceptanceReport run_acceptance(const AcceptanceOptions& options, std::ostream* progress = nullptr);

}  // namespace fracheat
