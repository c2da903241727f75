#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wittkit {

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;  // empty when the suite passed

    bool passed() const { return failures == 0 && cases > 0; }
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<SuiteResult> suites;

    bool all_passed() const;
};

// Suite names in execution order.
std::vector<std::string> verify_suite_names();

/// Runs the randomized invariant suites. Suites run concurrently, each with
/// its own generator derived from (seed, suite index), so the report depends
/// on the seed only. `only` restricts the run to the named suites.
VerifyReport run_verify(std::uint64_t seed, const std::vector<std::string>& only = {});

// One line per suite: "PASS name (cases)" or "FAIL name (failures/cases): first failure".
std::string to_text(const VerifyReport& r);

}  // namespace wittkit
