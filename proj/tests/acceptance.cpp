// Acceptance suite: one PASS/FAIL line per criterion.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "adelic/verification.hpp"

int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    bool all = true;
    adelic::run_suite(ids, {}, [&](const adelic::CriterionResult& r) {
        all &= r.pass;
        std::string budget = r.budget_seconds > 0 ? ", budget " + std::to_string(static_cast<int>(r.budget_seconds)) + " s" : "";
        std::printf("[%s] criterion %d (%s): %s; %.2f s%s%s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(), r.seconds,
                    budget.c_str(), r.within_budget ? "" : " EXCEEDED");
        std::fflush(stdout);
    });
    return all ? 0 : 1;
}
