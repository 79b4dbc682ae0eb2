#include "salss/random.hpp"

namespace salss {

void Fnv1a64::add_bytes(std::span<const std::byte> bytes) noexcept {
    for (const std::byte b : bytes) {
        add_byte(static_cast<std::uint8_t>(b));
    }
}

std::uint64_t fnv1a64(std::span<const std::byte> bytes, std::uint64_t basis) noexcept {
    Fnv1a64 h{basis};
    h.add_bytes(bytes);
    return h.value();
}

}  // namespace salss
