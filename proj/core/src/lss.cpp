#include "salss/lss.hpp"

#include <cmath>
#include <unordered_set>

#include "salss/errors.hpp"
#include "salss/random.hpp"

namespace salss {

std::size_t decide(SchedulerId id, const ObservationKey& key, std::size_t k) {
    if (k == 0) {
        throw ContractViolation("decide called with no enabled transitions");
    }
    Fnv1a64 h;
    h.add_u32(id.value);
    for (const std::uint64_t w : key.words()) {
        h.add_u64(w);
    }
    SplitMix64 rng{h.value()};
    const double u = rng.uniform01();
    const auto index = static_cast<std::size_t>(std::floor(u * static_cast<double>(k)));
    return index < k ? index : k - 1;
}

std::vector<SchedulerId> sample_ids(std::size_t m, std::uint64_t master_seed) {
    if (m > (std::size_t{1} << 32)) {
        throw ContractViolation("cannot sample more than 2^32 distinct scheduler ids");
    }
    std::vector<SchedulerId> ids;
    ids.reserve(m);
    std::unordered_set<std::uint32_t> seen;
    seen.reserve(m);
    SplitMix64 rng{master_seed};
    while (ids.size() < m) {
        const auto id = static_cast<std::uint32_t>(rng.next() >> 32);
        if (seen.insert(id).second) {
            ids.push_back(SchedulerId{id});
        }
    }
    return ids;
}

}  // namespace salss
