#include "salss/semantics.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "salss/errors.hpp"
#include "salss/observe.hpp"

namespace salss {

State initial_state(const SaModel& model) {
    State s;
    s.location = model.initial;
    s.values.assign(model.num_clocks(), 0.0);
    s.expirations.assign(model.num_clocks(), 0.0);
    return s;
}

RunContext initial_context(const SaModel& model) {
    RunContext ctx;
    ctx.state = initial_state(model);
    return ctx;
}

void reset(RunContext& ctx, const SaModel& model) {
    ctx.state.location = model.initial;
    ctx.state.values.assign(model.num_clocks(), 0.0);
    ctx.state.expirations.assign(model.num_clocks(), 0.0);
    ctx.elapsed = 0.0;
    ctx.steps = 0;
    ctx.trace = ObservationTrace{};
    ctx.last_jump.reset();
}

bool is_enabled(std::span<const ClockId> guard, const Valuation& values, const Valuation& expirations) {
    for (const ClockId c : guard) {
        if (c >= values.size() || c >= expirations.size()) {
            throw ModelError("guard references unknown clock #" + std::to_string(c));
        }
        if (values[c] < expirations[c]) {
            return false;
        }
    }
    return true;
}

void enabled_edges(const SaModel& model, const State& state, std::vector<std::size_t>& out) {
    out.clear();
    const auto& edges = model.edges[state.location];
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (is_enabled(edges[i].guard, state.values, state.expirations)) {
            out.push_back(i);
        }
    }
}

std::vector<std::size_t> enabled_edges(const SaModel& model, const State& state) {
    std::vector<std::size_t> out;
    enabled_edges(model, state, out);
    return out;
}

std::optional<double> min_delay(const SaModel& model, const State& state) {
    const auto& edges = model.edges[state.location];
    if (edges.empty()) {
        return std::nullopt;
    }
    double best = std::numeric_limits<double>::infinity();
    for (const Edge& e : edges) {
        double wait = 0.0;
        for (const ClockId c : e.guard) {
            wait = std::max(wait, state.expirations[c] - state.values[c]);
        }
        if (!(wait > 0.0)) {
            throw ContractViolation("min_delay called in location '" + model.locations[state.location] +
                                    "' while an edge is enabled");
        }
        best = std::min(best, wait);
    }
    if (!(best < std::numeric_limits<double>::infinity())) {
        return std::nullopt;
    }
    return best;
}

namespace {

LocationId sample_target(const Edge& e, SplitMix64& rng) {
    if (e.targets.size() == 1) {
        return e.targets.front().location;
    }
    const double u = rng.uniform01();
    double cumulative = 0.0;
    for (const Target& t : e.targets) {
        cumulative += t.weight;
        if (u < cumulative) {
            return t.location;
        }
    }
    return e.targets.back().location;
}

void record(RunContext& ctx, const Observer* observer, const StepLabel& label) {
    if (observer != nullptr && observer->cls.memory == Memory::history) {
        ctx.trace = extend_trace(ctx.trace, *observer, ctx.state, ctx.elapsed, label);
    }
}

}  // namespace

StepLabel step(const SaModel& model, RunContext& ctx, std::optional<std::size_t> chosen, SplitMix64& rng,
               const Observer* observer) {
    State& s = ctx.state;
    const auto& edges = model.edges[s.location];

    if (chosen) {
        if (*chosen >= edges.size()) {
            throw ContractViolation("edge index " + std::to_string(*chosen) + " out of range in location '" +
                                    model.locations[s.location] + "'");
        }
        const Edge& e = edges[*chosen];
        if (!is_enabled(e.guard, s.values, s.expirations)) {
            throw ContractViolation("chosen edge '" + model.actions[e.action] + "' is not enabled in location '" +
                                    model.locations[s.location] + "'");
        }
        const StepLabel label = Jump{e.action};
        record(ctx, observer, label);
        s.location = sample_target(e, rng);
        for (const ClockId c : e.restarts) {
            s.values[c] = 0.0;
            s.expirations[c] = sample(model.delays[c], rng);
        }
        ++ctx.steps;
        ctx.last_jump = e.action;
        return label;
    }

    const auto t = min_delay(model, s);
    if (!t) {
        throw Timelock("no transition possible in location '" + model.locations[s.location] + "'");
    }
    const StepLabel label = Delay{*t};
    record(ctx, observer, label);
    for (std::size_t c = 0; c < s.values.size(); ++c) {
        const double residual = s.expirations[c] - s.values[c];
        s.values[c] += *t;
        if (residual > 0.0 && residual <= *t) {
            s.values[c] = std::max(s.values[c], s.expirations[c]);
        }
    }
    ctx.elapsed += *t;
    ++ctx.steps;
    return label;
}

}  // namespace salss
