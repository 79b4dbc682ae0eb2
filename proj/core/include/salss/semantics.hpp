#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "salss/model.hpp"
#include "salss/random.hpp"
#include "salss/trace.hpp"

namespace salss {

struct Observer;

/// Clock id -> non-negative real. Used both for clock values v and for
/// absolute expiration times e.
using Valuation = std::vector<double>;

/// ⟨ℓ, v, e⟩. A clock c is expired when values[c] >= expirations[c].
struct State {
    LocationId location = 0;
    Valuation values;
    Valuation expirations;

    bool operator==(const State&) const = default;
};

struct Jump {
    ActionId action = 0;
    bool operator==(const Jump&) const = default;
};

struct Delay {
    double duration = 0.0;
    bool operator==(const Delay&) const = default;
};

using StepLabel = std::variant<Jump, Delay>;

/// Everything a single simulation run carries between steps. `elapsed` is the
/// global time t and always equals the sum of the delay labels taken so far.
struct RunContext {
    State state;
    double elapsed = 0.0;
    std::uint64_t steps = 0;
    ObservationTrace trace;
    std::optional<ActionId> last_jump;
};

/// ⟨ℓ0, 0, 0⟩: every clock starts out expired.
State initial_state(const SaModel& model);
RunContext initial_context(const SaModel& model);

/// Resets `ctx` to the initial context, reusing its buffers.
void reset(RunContext& ctx, const SaModel& model);

/// En(G, v, e): every guard clock has reached its expiration time.
/// Throws ModelError if a guard clock is outside the valuations.
bool is_enabled(std::span<const ClockId> guard, const Valuation& values, const Valuation& expirations);

/// Indices (into model.edges[location]) of the enabled edges, in model order.
std::vector<std::size_t> enabled_edges(const SaModel& model, const State& state);
void enabled_edges(const SaModel& model, const State& state, std::vector<std::size_t>& out);

/// The smallest t > 0 after which some edge becomes enabled, or nullopt when
/// the location has no outgoing edges. Throws ContractViolation if an edge is
/// already enabled.
std::optional<double> min_delay(const SaModel& model, const State& state);

/// Executes one transition of the TPTS.
///
/// With `chosen` set, takes that (enabled) edge: samples the target from μ,
/// zeroes the restarted clocks and resamples their expiration times in
/// ascending clock order; all other values and expirations are kept. Without
/// `chosen`, lets the minimal delay pass. The clocks whose expiration defines
/// the delay are pinned to their expiration time so the enabling edge is
/// enabled exactly after the delay, independent of floating-point rounding.
///
/// When `observer` is a history-dependent class, the trace is extended with
/// the pre-state record and the label.
///
/// Throws ContractViolation for a chosen edge that is not enabled, or for a
/// delay request while an edge is enabled; Timelock when no delay exists.
StepLabel step(const SaModel& model, RunContext& ctx, std::optional<std::size_t> chosen, SplitMix64& rng,
               const Observer* observer = nullptr);

}  // namespace salss
