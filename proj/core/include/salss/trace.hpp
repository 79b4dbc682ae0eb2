#pragma once

#include <cstdint>

#include "salss/random.hpp"

namespace salss {

/// Constant-size summary of a run prefix as seen by a history-dependent class.
///
/// `digest` is FNV-1a over the concatenated per-step records, so it is
/// order sensitive. `delay_ticks` accumulates the recorded (discretised)
/// delay labels in units of 1/n.
struct ObservationTrace {
    std::uint64_t digest = kFnvOffsetBasis;
    std::uint64_t steps = 0;
    std::uint64_t delay_ticks = 0;

    bool operator==(const ObservationTrace&) const = default;
};

}  // namespace salss
