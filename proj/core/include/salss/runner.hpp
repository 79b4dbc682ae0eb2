#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "salss/errors.hpp"
#include "salss/model.hpp"
#include "salss/observe.hpp"
#include "salss/random.hpp"
#include "salss/semantics.hpp"

namespace salss {

enum class OutcomeKind : std::uint8_t { reached, not_reached, truncated };

struct RunOutcome {
    OutcomeKind kind = OutcomeKind::not_reached;
    std::uint64_t steps = 0;

    bool operator==(const RunOutcome&) const = default;
};

/// Buffers reused across the runs of one worker.
struct RunWorkspace {
    RunContext ctx;
    std::vector<std::size_t> enabled;
    ObservationKey key;
};

/// Simulates one run until the goal is hit, no transition is possible, or
/// `max_steps` steps were taken. `choose(ctx, enabled)` returns a position in
/// `enabled` and is only consulted when more than one edge is enabled.
/// `observer` controls trace recording and may be null.
template <class Chooser>
RunOutcome run_to_outcome(const SaModel& model, const GoalSet& goal, std::uint64_t max_steps, SplitMix64& rng,
                          const Observer* observer, RunWorkspace& ws, Chooser&& choose) {
    RunContext& ctx = ws.ctx;
    reset(ctx, model);
    for (;;) {
        if (goal.contains(ctx.state.location)) {
            return {OutcomeKind::reached, ctx.steps};
        }
        if (ctx.steps >= max_steps) {
            return {OutcomeKind::truncated, ctx.steps};
        }
        enabled_edges(model, ctx.state, ws.enabled);
        if (!ws.enabled.empty()) {
            std::size_t pick = 0;
            if (ws.enabled.size() > 1) {
                pick = choose(ctx, std::span<const std::size_t>{ws.enabled});
                if (pick >= ws.enabled.size()) {
                    throw ContractViolation("scheduler picked a transition that is not enabled");
                }
            }
            step(model, ctx, ws.enabled[pick], rng, observer);
        } else if (model.edges[ctx.state.location].empty()) {
            return {OutcomeKind::not_reached, ctx.steps};
        } else {
            step(model, ctx, std::nullopt, rng, observer);
        }
    }
}

}  // namespace salss
