#pragma once

// Acceptance property suites, runnable from the CLI (`check <name>`) and from
// the acceptance test binary. Every threshold is pinned here; all checks are
// exact equalities at the stated configurations.

#include <string>
#include <vector>

#include "hlf/common.hpp"

namespace hlf {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<std::string> suite_names();

/// Runs one named suite (or "all"). Deterministic for a fixed seed.
std::vector<CheckResult> run_suite(const std::string& name, u64 seed);

}  // namespace hlf
