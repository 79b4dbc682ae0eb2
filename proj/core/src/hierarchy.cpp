#include "salss/hierarchy.hpp"

#include <algorithm>

#include "salss/builtin.hpp"
#include "salss/errors.hpp"

namespace salss {

namespace {

SchedulerClass cls(std::string_view spec) {
    const auto parsed = SchedulerClass::parse(spec);
    if (!parsed) {
        throw ContractViolation("bad class spec in scenario table: " + std::string{spec});
    }
    return *parsed;
}

Scenario strict(std::string model, std::string_view stronger, std::string_view weaker) {
    return Scenario{std::move(model), Relation::strict, {cls(stronger), cls(weaker)}};
}

Scenario equivalent(std::string model, std::initializer_list<std::string_view> specs) {
    Scenario s{std::move(model), Relation::equivalent, {}};
    for (const auto spec : specs) {
        s.classes.push_back(cls(spec));
    }
    return s;
}

}  // namespace

std::string Scenario::describe() const {
    std::string out = model + ": ";
    const char* sep = relation == Relation::strict ? " > " : " = ";
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (i > 0) out += sep;
        out += classes[i].display_name();
    }
    return out;
}

const std::vector<Scenario>& hierarchy_scenarios() {
    static const std::vector<Scenario> scenarios = {
        strict("M1", "hist:v,e", "hist:v,o"),
        strict("M2", "hist:o", "ml:v,o"),
        strict("M3", "hist:t,e", "ml:t,e"),
        strict("M3", "ml:v,e", "ml:t,e"),
        strict("M4", "ml:t,e", "ml:e"),
        strict("M1", "ml:v,e", "ml:v,o"),
        strict("M1", "ml:t,e", "ml:t,o"),
        strict("M3", "ml:t,o", "ml:t,e"),
        strict("M1", "ml:e", "ml:o"),
        strict("M3", "ml:o", "ml:e"),
        strict("M5", "ml:t,o", "ml:o"),
        strict("M6", "hist:v", "ml:v"),
        strict("M3", "hist:t", "ml:t"),
        strict("M3", "ml:v", "ml:t"),
        strict("M4", "ml:t", "ml:"),
        equivalent("M1", {"hist:v,e", "hist:t,e", "hist:e"}),
        equivalent("M1", {"hist:v,o", "hist:t,o", "hist:o"}),
        equivalent("M6", {"hist:v", "hist:t", "hist:"}),
    };
    return scenarios;
}

bool HierarchyReport::all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const ScenarioResult& r) { return r.passed; });
}

HierarchyReport hierarchy_check(ExperimentCache& cache, const std::vector<Scenario>& scenarios,
                                const std::vector<Discretisation>& factors, HierarchyMode mode,
                                std::string_view goal) {
    if (factors.empty()) {
        throw ContractViolation("hierarchy_check needs at least one discretisation factor");
    }
    HierarchyReport report;
    report.mode = mode;
    report.slack = 2.0 * cache.params().epsilon;
    for (const Scenario& s : scenarios) {
        const SaModel model = builtin(s.model);
        ScenarioResult r{s, {}, false};
        for (const SchedulerClass& c : s.classes) {
            double best = 0.0;
            for (const Discretisation n : factors) {
                best = std::max(best, cache.get(model, goal, c, n).p_max);
            }
            r.p_max.push_back(best);
        }
        if (s.relation == Relation::strict) {
            const double diff = r.p_max[0] - r.p_max[1];
            r.passed = mode == HierarchyMode::full ? diff > report.slack : diff >= -report.slack;
        } else {
            const auto [lo, hi] = std::minmax_element(r.p_max.begin(), r.p_max.end());
            r.passed = *hi - *lo <= report.slack;
        }
        report.results.push_back(std::move(r));
    }
    return report;
}

}  // namespace salss
