#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "wpl/report.hpp"

namespace wpl::checks {

// One registry row tying a verifiable claim to a runnable suite.  The
// registry is plain data so front ends can render a claim-to-command table.
// Report lines whose claim starts with "info: " are informational: they are
// printed as INFO and never affect the verdict.
struct CheckEntry {
    std::string name;      // stable key used by `check --only`
    std::string claim;     // the mathematical claim being certified
    std::string expected;  // one-line expected outcome
    int min_p = 2;         // applicable weight range (inclusive)
    int max_p = 9;
    std::function<Report(int p)> runner;  // runs the suite at one weight
};

// All registered checks, in fixed execution/printing order.
const std::vector<CheckEntry>& registry();

// Runs the named checks (empty = all) over the requested weights (empty =
// each check's full applicable range; otherwise the request is intersected
// with that range, and a check with an empty intersection is skipped).
// Output is buffered per check and emitted in registry order, one
// PASS/FAIL/INFO line per report line.  Returns 0 when every non-info line
// passed, 1 otherwise.  Unknown names are a UsageError.
int run_checks(const std::vector<std::string>& names, const std::vector<int>& ps,
               std::ostream& os);

// The claim-to-command table: one line per registry row.
std::string registry_table();

}  // namespace wpl::checks
