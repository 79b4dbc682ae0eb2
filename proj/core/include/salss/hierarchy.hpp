#pragma once

#include <string>
#include <vector>

#include "salss/observe.hpp"
#include "salss/smc.hpp"

namespace salss {

enum class Relation { strict, equivalent };

/// A claim about the maximal goal probability of scheduler classes on one
/// builtin. For strict scenarios classes[0] is the stronger and classes[1]
/// the weaker class; equivalent scenarios may list more than two classes.
struct Scenario {
    std::string model;
    Relation relation = Relation::strict;
    std::vector<SchedulerClass> classes;

    std::string describe() const;
};

const std::vector<Scenario>& hierarchy_scenarios();

/// fast: strict scenarios only need stronger >= weaker - 2ε.
/// full: strict scenarios need stronger - weaker > 2ε.
/// Equivalent scenarios need max - min <= 2ε in both modes.
enum class HierarchyMode { fast, full };

struct ScenarioResult {
    Scenario scenario;
    /// Per class, the largest p_max over the discretisation factors.
    std::vector<double> p_max;
    bool passed = false;
};

struct HierarchyReport {
    HierarchyMode mode = HierarchyMode::full;
    double slack = 0.0;
    std::vector<ScenarioResult> results;

    bool all_passed() const;
};

HierarchyReport hierarchy_check(ExperimentCache& cache, const std::vector<Scenario>& scenarios,
                                const std::vector<Discretisation>& factors, HierarchyMode mode,
                                std::string_view goal = "win");

}  // namespace salss
