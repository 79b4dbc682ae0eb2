#pragma once

#include <cmath>
#include <cstdint>

#include "salss/model.hpp"
#include "salss/random.hpp"
#include "salss/semantics.hpp"

namespace salss::testkit {

inline double uniform(SplitMix64& rng, double lo, double hi) {
    return lo + rng.uniform01() * (hi - lo);
}

/// A context with arbitrary location, valuations, elapsed time and digest.
/// Not necessarily reachable; observation functions do not care.
inline RunContext random_context(const SaModel& model, SplitMix64& rng) {
    RunContext ctx = initial_context(model);
    ctx.state.location = static_cast<LocationId>(rng.next() % model.locations.size());
    for (std::size_t c = 0; c < model.num_clocks(); ++c) {
        ctx.state.values[c] = uniform(rng, 0.0, 3.0);
        ctx.state.expirations[c] = uniform(rng, 0.0, 3.0);
    }
    ctx.elapsed = uniform(rng, 0.0, 6.0);
    ctx.trace.digest = rng.next();
    ctx.trace.steps = rng.next() % 16;
    return ctx;
}

/// Brute-force exact rational check: |a - b| <= tol.
inline bool near(double a, double b, double tol) {
    return std::fabs(a - b) <= tol;
}

}  // namespace salss::testkit
