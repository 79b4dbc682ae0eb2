#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "salss/distribution.hpp"

namespace salss {

using LocationId = std::uint32_t;
using ClockId = std::uint32_t;
using ActionId = std::uint32_t;

struct Target {
    LocationId location = 0;
    double weight = 1.0;
    bool operator==(const Target&) const = default;
};

/// ℓ --G,a,R--> μ. Guard and restart sets are kept sorted by clock id.
struct Edge {
    std::vector<ClockId> guard;
    ActionId action = 0;
    std::vector<ClockId> restarts;
    std::vector<Target> targets;
    bool operator==(const Edge&) const = default;
};

/// A closed stochastic automaton plus named goal sets.
///
/// Everything is index based: `delays` is parallel to `clocks` and `edges` is
/// parallel to `locations`. Instances are treated as immutable once validated
/// and may be shared read-only between worker threads.
struct SaModel {
    std::string name;
    std::vector<std::string> locations;
    std::vector<std::string> clocks;
    std::vector<std::string> actions;
    std::vector<DistributionSpec> delays;
    std::vector<std::vector<Edge>> edges;
    LocationId initial = 0;
    std::map<std::string, std::vector<LocationId>> goals;

    bool operator==(const SaModel&) const = default;

    std::optional<LocationId> location_index(std::string_view location) const;
    std::optional<ClockId> clock_index(std::string_view clock) const;
    std::optional<ActionId> action_index(std::string_view action) const;

    std::size_t num_clocks() const noexcept {
        return clocks.size();
    }
};

/// Membership mask over locations for one goal set.
class GoalSet {
  public:
    GoalSet() = default;
    GoalSet(std::string name, std::vector<bool> mask) : _name{std::move(name)}, _mask{std::move(mask)} {}

    bool contains(LocationId location) const noexcept {
        return location < _mask.size() && _mask[location];
    }
    const std::string& name() const noexcept {
        return _name;
    }

  private:
    std::string _name;
    std::vector<bool> _mask;
};

/// Throws NotFound for an unknown goal name.
GoalSet goal_set(const SaModel& model, std::string_view goal_name);

enum class ViolationCode {
    BadDistribution,
    DuplicateAction,
    BadWeights,
    EmptyTargets,
    UnknownLocation,
    UnknownClock,
    UnknownAction,
    MissingDelayMeasure,
    DuplicateLocation,
    DuplicateClock,
    BadInitial,
    EdgeTableMismatch,
};

std::string_view to_string(ViolationCode code) noexcept;

struct Violation {
    ViolationCode code;
    std::string message;
};

/// All well-formedness violations; empty iff the model is valid.
std::vector<Violation> validate(const SaModel& model);

/// Convenience for constructing models by name. Edges get automatic action
/// labels e0, e1, ... numbered per source location in insertion order.
class ModelBuilder {
  public:
    explicit ModelBuilder(std::string name);

    ModelBuilder& clock(std::string name, DistributionSpec dist);
    ModelBuilder& location(std::string name);
    ModelBuilder& initial(std::string_view location);
    ModelBuilder& edge(std::string_view from, std::initializer_list<std::string_view> guard,
                       std::initializer_list<std::string_view> restarts, std::string_view to);
    ModelBuilder& edge(std::string_view from, std::initializer_list<std::string_view> guard,
                       std::initializer_list<std::string_view> restarts,
                       std::vector<std::pair<std::string, double>> targets);
    ModelBuilder& goal(std::string name, std::initializer_list<std::string_view> locations);

    /// Throws ModelError when the result does not validate.
    SaModel build() const;

  private:
    LocationId require_location(std::string_view name) const;
    std::vector<ClockId> clock_set(std::initializer_list<std::string_view> names) const;
    ActionId auto_action(LocationId from);

    SaModel _model;
};

}  // namespace salss
