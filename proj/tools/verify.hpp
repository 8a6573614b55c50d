#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpmeans/config.hpp"
#include "dpmeans/measure.hpp"

namespace dpmeans::cli {

struct CheckResult {
    std::string suite;
    std::string name;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    // A negative control: it passes when the residual exceeds ten times the tolerance.
    bool expected_fail = false;
};

const std::vector<std::string>& suite_names();

// Runs one suite ("all" runs every suite) on the built-in panel plus the optional user measure.
// Throws InvalidArgument for an unknown suite name.
std::vector<CheckResult> run_suite(const std::string& suite, const std::optional<ParameterMeasure>& user,
                                   const QuadratureConfig& cfg);

std::string describe(const CheckResult& r);

}  // namespace dpmeans::cli
