#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace adelic {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool correct = false;     ///< every identity held at its tolerance
    bool within_budget = true;
    bool pass = false;        ///< correct && within_budget
    long cases = 0;
    double worst_defect = 0;  ///< largest |defect| seen (0 for exact identities that held)
    std::string detail;
    double seconds = 0;
    double budget_seconds = 0;  ///< 0 when the criterion has no runtime bound
};

struct SuiteOptions {
    std::uint64_t seed = 20240601;
    /// Enumeration cap for the brute-force H^0 cross-check.
    std::uint64_t enumeration_limit = 20'000;
};

/// Runs one acceptance criterion (1..9).
CriterionResult run_criterion(int id, const SuiteOptions& opts = {});

/// Runs the listed criteria (all nine when empty), calling `progress` after each.
std::vector<CriterionResult> run_suite(const std::vector<int>& ids, const SuiteOptions& opts = {},
                                       const std::function<void(const CriterionResult&)>& progress = {});

constexpr int kCriteria = 9;

}  // namespace adelic
