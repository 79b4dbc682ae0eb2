#pragma once

#include <optional>
#include <string>
#include <variant>

#include "salss/random.hpp"

namespace salss {

/// Continuous uniform on [lo, hi).
struct Uniform {
    double lo = 0.0;
    double hi = 1.0;
    bool operator==(const Uniform&) const = default;
};

/// Dirac measure at `value`. Makes simultaneous expirations possible.
struct Constant {
    double value = 0.0;
    bool operator==(const Constant&) const = default;
};

struct Exponential {
    double rate = 1.0;
    bool operator==(const Exponential&) const = default;
};

/// Delay measure F(c) of a clock.
using DistributionSpec = std::variant<Uniform, Constant, Exponential>;

/// Draws one expiration delay. Uniform = lo + u(hi - lo), Exponential = -ln(1 - u)/rate,
/// Constant consumes no randomness.
double sample(const DistributionSpec& dist, SplitMix64& rng);

/// Reason the parameters are invalid, or nullopt.
std::optional<std::string> check(const DistributionSpec& dist);

/// Short human-readable form, e.g. "Uni(0, 1)".
std::string describe(const DistributionSpec& dist);

}  // namespace salss
