#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "salss/observe.hpp"

namespace salss {

struct SchedulerId {
    std::uint32_t value = 0;
    constexpr auto operator<=>(const SchedulerId&) const = default;
};

/// A sampled scheduler: every decision is a pure function of (id, key).
struct LssScheduler {
    SchedulerId id;
    SchedulerClass cls;
    Discretisation n;

    Observer observer() const noexcept {
        return Observer{cls, n};
    }
};

/// seed = FNV-1a(id as 4 LE bytes ‖ key bytes); w = splitmix64(seed).next();
/// returns floor((w >> 11) * 2^-53 * k). Throws ContractViolation for k == 0.
std::size_t decide(SchedulerId id, const ObservationKey& key, std::size_t k);

inline std::size_t decide(const LssScheduler& sched, const ObservationKey& key, std::size_t k) {
    return decide(sched.id, key, k);
}

/// m distinct ids from the splitmix64(master_seed) stream (upper 32 bits of
/// each word, duplicates rejected).
std::vector<SchedulerId> sample_ids(std::size_t m, std::uint64_t master_seed);

}  // namespace salss
