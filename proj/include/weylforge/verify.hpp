#pragma once

#include "weylforge/json_io.hpp"

#include <string>
#include <vector>

namespace wf {

// Zero (or negative) fields select each suite's own defaults.
struct VerifyParams {
    int n = 0;
    int degree = -1;
    int cases = 0;
    unsigned seed = 1;
};

struct PropertyResult {
    std::string name;
    bool pass = true;
    int cases = 0;
    Json counterexample;  // first failing case
};

struct SuiteResult {
    std::string suite;
    std::vector<PropertyResult> properties;
    double seconds = 0;

    bool pass() const;
    // Timing is left out so reports stay byte-identical across runs.
    Json to_json() const;
};

const std::vector<std::string>& suite_names();
// Throws MalformedInput for an unknown suite name.
SuiteResult run_suite(const std::string& name, const VerifyParams& p = {});

}  // namespace wf
