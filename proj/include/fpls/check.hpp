#pragma once

#include <string>
#include <vector>

#include "fpls/config.hpp"

namespace fpls {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;  // first counterexample on failure
};

/// Property suites behind the check command: coefficient symmetries,
/// pairwise conservation identities of the moment system, stationarity of
/// the discrete Maxwellian, and positivity of the implicit update. All are
/// randomized from the configured seed.
std::vector<SuiteResult> run_property_suites(const RunDescription& desc);

} // namespace fpls
