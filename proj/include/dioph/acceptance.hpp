#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dioph/report.hpp"

namespace dioph {

struct AcceptanceOptions {
    prec_t bits = 128;
    std::uint64_t seed = 1;
    std::vector<int> only;  // empty runs every criterion
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;       // every check of the criterion held
    std::string summary;       // one line: counts, worst slack, first failure
    Json detail;               // deterministic for fixed options
    double seconds = 0;        // wall time; not part of detail
    double time_limit = 0;     // seconds allowed
};

inline constexpr int kCriterionCount = 12;

CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

}  // namespace dioph
