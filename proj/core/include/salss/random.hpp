#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace salss {

inline constexpr std::uint64_t kFnvOffsetBasis = 14695981039346656037ULL;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

/// Incremental FNV-1a (64 bit). Integers are fed as little-endian bytes so
/// digests are identical on every platform.
class Fnv1a64 {
  public:
    constexpr Fnv1a64() noexcept = default;
    constexpr explicit Fnv1a64(std::uint64_t basis) noexcept : _hash{basis} {}

    constexpr void add_byte(std::uint8_t b) noexcept {
        _hash ^= b;
        _hash *= kFnvPrime;
    }

    constexpr void add_u32(std::uint32_t x) noexcept {
        for (int i = 0; i < 4; ++i) {
            add_byte(static_cast<std::uint8_t>(x >> (8 * i)));
        }
    }

    constexpr void add_u64(std::uint64_t x) noexcept {
        for (int i = 0; i < 8; ++i) {
            add_byte(static_cast<std::uint8_t>(x >> (8 * i)));
        }
    }

    void add_bytes(std::span<const std::byte> bytes) noexcept;

    constexpr std::uint64_t value() const noexcept {
        return _hash;
    }

  private:
    std::uint64_t _hash = kFnvOffsetBasis;
};

std::uint64_t fnv1a64(std::span<const std::byte> bytes, std::uint64_t basis = kFnvOffsetBasis) noexcept;

/// SplitMix64 (Steele, Lea, Flood). Satisfies UniformRandomBitGenerator.
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : _state{seed} {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (_state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// u in [0, 1): top 53 bits of the next word.
    constexpr double uniform01() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    constexpr std::uint64_t operator()() noexcept {
        return next();
    }
    static constexpr std::uint64_t min() noexcept {
        return 0;
    }
    static constexpr std::uint64_t max() noexcept {
        return ~std::uint64_t{0};
    }

    constexpr std::uint64_t state() const noexcept {
        return _state;
    }

  private:
    std::uint64_t _state;
};

}  // namespace salss
