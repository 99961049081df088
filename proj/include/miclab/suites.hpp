#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "miclab/report.hpp"

namespace miclab {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;  // seconds; 0 means none
};

// "PASS  3 theorem-1-equivalence (12.3s / 300s): detail"
std::string format_check(const CheckResult& r);

inline constexpr std::uint64_t kDefaultAcceptanceSeed = 20190501;

int acceptance_criterion_count();
// Runs criterion id (1-based). Exceptions become a failed result.
CheckResult run_acceptance_criterion(int id, std::uint64_t seed = kDefaultAcceptanceSeed);
// Calls on_result after each criterion so callers can stream output.
std::vector<CheckResult> run_acceptance(std::uint64_t seed = kDefaultAcceptanceSeed,
                                        const std::function<void(const CheckResult&)>& on_result = {});

// Asserted invariants over every construction plus `samples` random MICs per
// kind and dimension.
std::vector<CheckResult> run_theorem_suite(std::uint64_t seed, int samples = 50,
                                           const std::function<void(const CheckResult&)>& on_result = {});

// One report per conjecture probe, plus the d = 3 plateau metric.
std::vector<Report> run_conjecture_suite(std::uint64_t seed);

}  // namespace miclab
