#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "salss/model.hpp"
#include "salss/observe.hpp"
#include "salss/smc.hpp"

namespace salss {

/// What a fixed strategy gets to look at. Rules are expected to read only the
/// parts allowed by their declared class.
struct StrategyView {
    const State& state;
    double elapsed;
    std::optional<ActionId> last_jump;
};

/// A hand-written deterministic strategy for one builtin model. `choose`
/// returns an index into model.edges[location] and is called only when more
/// than one edge is enabled.
struct NamedStrategy {
    std::string model;
    std::string rule;
    SchedulerClass declared;
    std::function<std::size_t(const StrategyView&)> choose;
};

/// Rule ids per model; "ℓ" and "≤" are accepted as aliases of "l" and "<=".
///   M0: left-iff-x-before-y, always-left
///   M1: x-threshold-1/2
///   M2: left-iff-x-before-z, left-iff-x-before-z-and-vx<35/12
///   M3: by-incoming-edge
///   M4: always-l3, always-l4, l3-iff-t<=1/2, l3-iff-t>1/2
///   M6: by-incoming-edge
/// Throws NotFound for anything else.
NamedStrategy named_strategy(const SaModel& model, std::string_view rule);

/// Rule ids available for a model name (empty for unknown models).
std::vector<std::string> strategy_names(std::string_view model);

/// Edge index the strategy takes in `view`, checked against enabledness.
std::size_t strategy_choice(const SaModel& model, const NamedStrategy& strategy, const StrategyView& view);

/// Monte Carlo estimate of the goal probability under the fixed strategy.
/// Run i uses the stream run_seed(seed, 0, i). half_width is taken at `delta`.
Estimate mc_reference(const SaModel& model, const NamedStrategy& strategy, std::uint64_t runs, std::uint64_t seed,
                      double delta = 0.01, std::string_view goal = "win", std::uint64_t max_steps = 100);

struct ReferenceEntry {
    std::string model;
    std::string scenario;
    std::string exact;
    double value = 0.0;
    bool approximate = false;
    double tolerance = 0.0;
    /// Strategy realising the value, if one is catalogued.
    std::string strategy;
};

const std::vector<ReferenceEntry>& reference_table();

/// Throws NotFound.
const ReferenceEntry& reference_lookup(std::string_view model, std::string_view scenario);

void write_reference_csv(std::ostream& out, const std::vector<ReferenceEntry>& entries);

}  // namespace salss
