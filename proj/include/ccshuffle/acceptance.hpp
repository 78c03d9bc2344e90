#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ccshuffle {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  unsigned threads = 0;
  std::uint64_t seed = 20240601;
  std::vector<int> only;  // empty = all criteria
};

inline constexpr int kCriterionCount = 14;

/// Runs the numbered checks in order. `report` is called after each one.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& report = {});

std::string format_result(const CriterionResult& r);

}  // namespace ccshuffle
