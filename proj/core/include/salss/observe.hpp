#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "salss/semantics.hpp"
#include "salss/trace.hpp"

namespace salss {

enum class Memory : std::uint8_t { memoryless = 0, history = 1 };
enum class Timing : std::uint8_t { none = 0, values = 1, global_time = 2 };
enum class Future : std::uint8_t { none = 0, expirations = 1, order = 2 };

/// One of the 2 x 3 x 3 information restrictions on schedulers. Classes with
/// future == none are the non-prophetic ones.
struct SchedulerClass {
    Memory memory = Memory::history;
    Timing timing = Timing::values;
    Future future = Future::expirations;

    constexpr bool operator==(const SchedulerClass&) const = default;
    constexpr auto operator<=>(const SchedulerClass& o) const {
        return tag() <=> o.tag();
    }

    /// memory * 9 + timing * 3 + future; the first word of every key.
    constexpr std::uint64_t tag() const noexcept {
        return static_cast<std::uint64_t>(memory) * 9 + static_cast<std::uint64_t>(timing) * 3 +
               static_cast<std::uint64_t>(future);
    }

    constexpr bool prophetic() const noexcept {
        return future != Future::none;
    }

    /// Canonical spec string: "hist:v,e", "ml:t", "ml:" ...
    std::string spec() const;

    /// Display form: "hist ℓ,v,e", "ml ℓ".
    std::string display_name() const;

    /// Parses the `hist|ml` `:` {v,t,e,o} grammar. At most one of v/t and one
    /// of e/o; order inside the list does not matter.
    static std::optional<SchedulerClass> parse(std::string_view spec);
};

/// All 18 classes, history classes first.
const std::array<SchedulerClass, 18>& all_classes();

/// Grid factor n: reals are grouped into the half-open cells [i/n, (i+1)/n).
struct Discretisation {
    std::uint32_t factor = 1;
    constexpr bool operator==(const Discretisation&) const = default;
};

/// floor(x * n). Throws ContractViolation for negative or non-finite x.
std::uint64_t discretise(double x, Discretisation n);

/// Dense ranks of the residual lifetimes e(c) - v(c); equal residuals share a
/// rank. Comparison is exact.
struct ExpirationOrder {
    std::vector<std::uint32_t> ranks;
    bool operator==(const ExpirationOrder&) const = default;
};

ExpirationOrder expiration_order(const Valuation& values, const Valuation& expirations);

/// The class and grid a scheduler observes the run through.
struct Observer {
    SchedulerClass cls;
    Discretisation n;
};

/// Canonical encoding of what a class may observe: little-endian 64-bit words
/// [class tag, n, location, (history digest), components...]. Components are,
/// in order and only when visible: discretised v per clock or discretised t,
/// then discretised e per clock or order ranks per clock.
class ObservationKey {
  public:
    ObservationKey() = default;

    const std::vector<std::uint64_t>& words() const noexcept {
        return _words;
    }
    std::vector<std::byte> bytes() const;

    /// FNV-1a of bytes() continuing from `basis`.
    std::uint64_t hash(std::uint64_t basis = kFnvOffsetBasis) const noexcept;

    void clear() noexcept {
        _words.clear();
    }
    void push(std::uint64_t word) {
        _words.push_back(word);
    }

    bool operator==(const ObservationKey&) const = default;

  private:
    std::vector<std::uint64_t> _words;
};

ObservationKey project(const Observer& observer, const RunContext& ctx);

/// project() into a reused buffer.
void project_into(const Observer& observer, const RunContext& ctx, ObservationKey& key);

/// The per-step history record of a state: project() without the digest.
ObservationKey state_record(const Observer& observer, const State& state, double elapsed);

/// Folds one step into the trace: digest := FNV-1a(digest; record ‖ label),
/// where a jump encodes as [0, action index] and a delay as [1, discretise(t, n)].
ObservationTrace extend_trace(const ObservationTrace& trace, const Observer& observer,
                              const ObservationKey& pre_state_record, const StepLabel& label);

/// Same as above, encoding the record straight from the pre-state.
ObservationTrace extend_trace(const ObservationTrace& trace, const Observer& observer, const State& pre_state,
                              double elapsed, const StepLabel& label);

}  // namespace salss
