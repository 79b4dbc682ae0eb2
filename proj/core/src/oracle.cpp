#include "salss/oracle.hpp"

#include <algorithm>
#include <iomanip>

#include "salss/errors.hpp"
#include "salss/report.hpp"
#include "salss/runner.hpp"

namespace salss {

namespace {

std::string normalise_rule(std::string_view rule) {
    std::string out{rule};
    auto replace_all = [&](std::string_view from, std::string_view to) {
        for (std::size_t pos = out.find(from); pos != std::string::npos; pos = out.find(from, pos + to.size())) {
            out.replace(pos, from.size(), to);
        }
    };
    replace_all("ℓ", "l");
    replace_all("≤", "<=");
    return out;
}

LocationId location_of(const SaModel& model, std::string_view name) {
    if (const auto id = model.location_index(name)) {
        return *id;
    }
    throw ModelError("model " + model.name + " has no location '" + std::string{name} + "'");
}

ClockId clock_of(const SaModel& model, std::string_view name) {
    if (const auto id = model.clock_index(name)) {
        return *id;
    }
    throw ModelError("model " + model.name + " has no clock '" + std::string{name} + "'");
}

// Index of the edge leaving `from` whose (single) target is `to`.
std::size_t edge_to(const SaModel& model, std::string_view from, std::string_view to) {
    const LocationId src = location_of(model, from);
    const LocationId dst = location_of(model, to);
    const auto& edges = model.edges[src];
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].targets.size() == 1 && edges[i].targets.front().location == dst) {
            return i;
        }
    }
    throw ModelError("no edge from '" + std::string{from} + "' to '" + std::string{to} + "' in " + model.name);
}

double residual(const State& s, ClockId c) {
    return s.expirations[c] - s.values[c];
}

SchedulerClass cls(std::string_view spec) {
    return *SchedulerClass::parse(spec);
}

struct Catalogue {
    std::string_view model;
    std::string_view rule;
};

constexpr Catalogue kCatalogue[] = {
    {"M0", "left-iff-x-before-y"},
    {"M0", "always-left"},
    {"M1", "x-threshold-1/2"},
    {"M2", "left-iff-x-before-z"},
    {"M2", "left-iff-x-before-z-and-vx<35/12"},
    {"M3", "by-incoming-edge"},
    {"M4", "always-l3"},
    {"M4", "always-l4"},
    {"M4", "l3-iff-t<=1/2"},
    {"M4", "l3-iff-t>1/2"},
    {"M6", "by-incoming-edge"},
};

// Chooses between the two edges of a binary choice point.
std::function<std::size_t(const StrategyView&)> binary(std::size_t left, std::size_t right,
                                                      std::function<bool(const StrategyView&)> go_left) {
    return [=, go_left = std::move(go_left)](const StrategyView& view) { return go_left(view) ? left : right; };
}

}  // namespace

std::vector<std::string> strategy_names(std::string_view model) {
    std::vector<std::string> out;
    for (const auto& entry : kCatalogue) {
        if (entry.model == model) {
            out.emplace_back(entry.rule);
        }
    }
    return out;
}

NamedStrategy named_strategy(const SaModel& model, std::string_view rule_id) {
    const std::string rule = normalise_rule(rule_id);
    const std::string& m = model.name;
    NamedStrategy s{m, rule, {}, {}};

    if (m == "M0" && (rule == "left-iff-x-before-y" || rule == "always-left")) {
        const ClockId x = clock_of(model, "x");
        const ClockId y = clock_of(model, "y");
        const auto l2 = edge_to(model, "l1", "l2");
        const auto l3 = edge_to(model, "l1", "l3");
        if (rule == "always-left") {
            s.declared = cls("ml:");
            s.choose = [l2](const StrategyView&) { return l2; };
        } else {
            s.declared = cls("ml:o");
            s.choose = binary(l2, l3, [x, y](const StrategyView& v) { return residual(v.state, x) < residual(v.state, y); });
        }
        return s;
    }
    if (m == "M1" && rule == "x-threshold-1/2") {
        const ClockId x = clock_of(model, "x");
        s.declared = cls("ml:e");
        s.choose = binary(edge_to(model, "l1", "l2"), edge_to(model, "l1", "l3"),
                          [x](const StrategyView& v) { return v.state.expirations[x] <= 0.5; });
        return s;
    }
    if (m == "M2" && (rule == "left-iff-x-before-z" || rule == "left-iff-x-before-z-and-vx<35/12")) {
        const ClockId x = clock_of(model, "x");
        const ClockId z = clock_of(model, "z");
        const auto l3 = edge_to(model, "l2", "l3");
        const auto l4 = edge_to(model, "l2", "l4");
        if (rule == "left-iff-x-before-z") {
            s.declared = cls("ml:o");
            s.choose = binary(l3, l4, [x, z](const StrategyView& v) { return residual(v.state, x) < residual(v.state, z); });
        } else {
            s.declared = cls("ml:v,o");
            s.choose = binary(l3, l4, [x, z](const StrategyView& v) {
                return residual(v.state, x) < residual(v.state, z) && v.state.values[x] < 35.0 / 12.0;
            });
        }
        return s;
    }
    if ((m == "M3" || m == "M6") && rule == "by-incoming-edge") {
        // The choice point is entered through one of two guarded edges; the
        // guard clock of the edge taken has already expired.
        const std::string_view entry = m == "M3" ? "l2" : "l1";
        const std::string_view choice = m == "M3" ? "l3" : "l2";
        const std::string_view left = m == "M3" ? "l4" : "l3";
        const std::string_view right = m == "M3" ? "l5" : "l4";
        const ClockId x = clock_of(model, "x");
        std::optional<ActionId> via_x;
        for (const Edge& e : model.edges[location_of(model, entry)]) {
            if (e.guard.size() == 1 && e.guard.front() == x) {
                via_x = e.action;
            }
        }
        if (!via_x) {
            throw ModelError("no x-guarded edge leaves '" + std::string{entry} + "' in " + m);
        }
        s.declared = cls("hist:");
        s.choose = binary(edge_to(model, choice, left), edge_to(model, choice, right),
                          [a = *via_x](const StrategyView& v) { return v.last_jump == a; });
        return s;
    }
    if (m == "M4" && (rule == "always-l3" || rule == "always-l4" || rule == "l3-iff-t<=1/2" || rule == "l3-iff-t>1/2")) {
        const auto l3 = edge_to(model, "l2", "l3");
        const auto l4 = edge_to(model, "l2", "l4");
        if (rule == "always-l3" || rule == "always-l4") {
            const auto pick = rule == "always-l3" ? l3 : l4;
            s.declared = cls("ml:");
            s.choose = [pick](const StrategyView&) { return pick; };
        } else if (rule == "l3-iff-t<=1/2") {
            s.declared = cls("ml:t");
            s.choose = binary(l3, l4, [](const StrategyView& v) { return v.elapsed <= 0.5; });
        } else {
            s.declared = cls("ml:t");
            s.choose = binary(l3, l4, [](const StrategyView& v) { return v.elapsed > 0.5; });
        }
        return s;
    }
    throw NotFound("unknown strategy '" + std::string{rule_id} + "' for model " + m);
}

std::size_t strategy_choice(const SaModel& model, const NamedStrategy& strategy, const StrategyView& view) {
    const std::size_t edge = strategy.choose(view);
    const auto& edges = model.edges[view.state.location];
    if (edge >= edges.size() || !is_enabled(edges[edge].guard, view.state.values, view.state.expirations)) {
        throw ContractViolation("strategy '" + strategy.rule + "' picked a disabled edge in location '" +
                                model.locations[view.state.location] + "'");
    }
    return edge;
}

Estimate mc_reference(const SaModel& model, const NamedStrategy& strategy, std::uint64_t runs, std::uint64_t seed,
                      double delta, std::string_view goal_name, std::uint64_t max_steps) {
    if (runs == 0) {
        throw ContractViolation("mc_reference needs at least one run");
    }
    const GoalSet goal = goal_set(model, goal_name);
    RunWorkspace ws;
    Estimate est;
    est.runs = runs;
    for (std::uint64_t i = 0; i < runs; ++i) {
        SplitMix64 rng{run_seed(seed, SchedulerId{0}, i)};
        const RunOutcome out = run_to_outcome(
            model, goal, max_steps, rng, nullptr, ws, [&](const RunContext& ctx, std::span<const std::size_t> enabled) {
                const std::size_t edge =
                    strategy_choice(model, strategy, StrategyView{ctx.state, ctx.elapsed, ctx.last_jump});
                return static_cast<std::size_t>(std::find(enabled.begin(), enabled.end(), edge) - enabled.begin());
            });
        if (out.kind == OutcomeKind::reached) {
            ++est.reached;
        } else if (out.kind == OutcomeKind::truncated) {
            ++est.truncated;
        }
    }
    est.p_hat = static_cast<double>(est.reached) / static_cast<double>(runs);
    est.half_width = hoeffding_half_width(runs, delta);
    return est;
}

const std::vector<ReferenceEntry>& reference_table() {
    static const std::vector<ReferenceEntry> table = {
        {"M0", "non-prophetic", "1/2", 0.5, false, 0.0, "always-left"},
        {"M0", "prophetic", "1", 1.0, false, 0.0, "left-iff-x-before-y"},
        {"M1", "max", "3/4", 0.75, false, 0.0, "x-threshold-1/2"},
        {"M2", "rule-a", "77/96", 77.0 / 96.0, false, 0.0, "left-iff-x-before-z"},
        {"M2", "rule-b", "7561/9216", 7561.0 / 9216.0, false, 0.0, "left-iff-x-before-z-and-vx<35/12"},
        {"M3", "hist-t-e", "1", 1.0, false, 0.0, "by-incoming-edge"},
        {"M4", "uninformed", "17/24", 17.0 / 24.0, false, 0.0, "always-l3"},
        {"M4", "time-aware", "~0.771", 0.771, true, 0.01, "l3-iff-t>1/2"},
        {"M6", "hist-v", "1", 1.0, false, 0.0, "by-incoming-edge"},
    };
    return table;
}

const ReferenceEntry& reference_lookup(std::string_view model, std::string_view scenario) {
    for (const auto& e : reference_table()) {
        if (e.model == model && e.scenario == scenario) {
            return e;
        }
    }
    throw NotFound("no reference value for " + std::string{model} + " / " + std::string{scenario});
}

void write_reference_csv(std::ostream& out, const std::vector<ReferenceEntry>& entries) {
    out << "model,scenario,exact,value,approximate,tolerance,strategy\n";
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::setprecision(10);
    for (const auto& e : entries) {
        out << csv_field(e.model) << ',' << csv_field(e.scenario) << ',' << csv_field(e.exact) << ',' << e.value << ','
            << (e.approximate ? "true" : "false") << ',' << e.tolerance << ',' << csv_field(e.strategy) << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

}  // namespace salss
