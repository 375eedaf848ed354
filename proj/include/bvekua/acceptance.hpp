#pragma once

#include <string>
#include <vector>

#include "bvekua/io.hpp"

namespace bvekua {

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool lower_bound = false;  ///< pass when measured >= tolerance (ratio checks)
    bool passed = false;
    bool skipped = false;
    std::string note;
};

/// Runs the verification suite at the configured resolution.  Checks whose
/// resolution requirements the config does not meet are reported as skipped.
std::vector<CheckResult> run_acceptance(const RunConfig& cfg);

bool all_passed(const std::vector<CheckResult>& results);

std::string format_check_line(const CheckResult& r);

/// JSON report with the config hash and one entry per check.
std::string acceptance_report_json(const RunConfig& cfg, const std::vector<CheckResult>& results);

}  // namespace bvekua
