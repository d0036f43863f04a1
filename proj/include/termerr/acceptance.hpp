#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "termerr/monte_carlo.hpp"

namespace termerr {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 0;  // 0 picks hardware concurrency
};

// Runs the full release gate, printing one [PASS]/[FAIL] line per criterion
// as it completes. All tolerances are fixed in the implementation.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace termerr
