#pragma once

#include <functional>

#include "padic/dynamics.hpp"

namespace padic {

struct BatteryOptions {
    unsigned precision = 20;
    unsigned trunc = 64;
    unsigned long seed = 20110803;
    bool property_suites = true;   // C14/C15 randomized suites
    unsigned property_cases = 200;
    unsigned rigidity_count = 100;
};

struct BatteryCriterion {
    std::string id;
    std::string title;
    std::function<Certificate(const BatteryOptions&)> run;
};

/// The built-in worked-example battery: every bundled identity, ladder and
/// property suite, one criterion per group.  C-entries are expected to pass;
/// EX entries record computed findings.
const std::vector<BatteryCriterion>& example_battery();

/// Runs the whole battery, prefixing check names with the criterion id.
Certificate run_example_battery(const BatteryOptions& opts = {});

}  // namespace padic
