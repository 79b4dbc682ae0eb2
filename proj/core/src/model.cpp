#include "salss/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "salss/errors.hpp"

namespace salss {

namespace {

template <class T>
std::optional<T> index_of(const std::vector<std::string>& names, std::string_view name) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
        return std::nullopt;
    }
    return static_cast<T>(it - names.begin());
}

constexpr double kWeightTolerance = 1e-9;

}  // namespace

std::optional<LocationId> SaModel::location_index(std::string_view location) const {
    return index_of<LocationId>(locations, location);
}

std::optional<ClockId> SaModel::clock_index(std::string_view clock) const {
    return index_of<ClockId>(clocks, clock);
}

std::optional<ActionId> SaModel::action_index(std::string_view action) const {
    return index_of<ActionId>(actions, action);
}

GoalSet goal_set(const SaModel& model, std::string_view goal_name) {
    const auto it = model.goals.find(std::string{goal_name});
    if (it == model.goals.end()) {
        throw NotFound("model " + model.name + " has no goal set '" + std::string{goal_name} + "'");
    }
    std::vector<bool> mask(model.locations.size(), false);
    for (const LocationId l : it->second) {
        if (l < mask.size()) {
            mask[l] = true;
        }
    }
    return GoalSet{it->first, std::move(mask)};
}

std::string_view to_string(ViolationCode code) noexcept {
    switch (code) {
        case ViolationCode::BadDistribution:
            return "BadDistribution";
        case ViolationCode::DuplicateAction:
            return "DuplicateAction";
        case ViolationCode::BadWeights:
            return "BadWeights";
        case ViolationCode::EmptyTargets:
            return "EmptyTargets";
        case ViolationCode::UnknownLocation:
            return "UnknownLocation";
        case ViolationCode::UnknownClock:
            return "UnknownClock";
        case ViolationCode::UnknownAction:
            return "UnknownAction";
        case ViolationCode::MissingDelayMeasure:
            return "MissingDelayMeasure";
        case ViolationCode::DuplicateLocation:
            return "DuplicateLocation";
        case ViolationCode::DuplicateClock:
            return "DuplicateClock";
        case ViolationCode::BadInitial:
            return "BadInitial";
        case ViolationCode::EdgeTableMismatch:
            return "EdgeTableMismatch";
    }
    return "Unknown";
}

std::vector<Violation> validate(const SaModel& model) {
    std::vector<Violation> out;
    auto report = [&out](ViolationCode code, std::string message) { out.push_back({code, std::move(message)}); };

    const auto num_locations = model.locations.size();
    const auto num_clocks = model.clocks.size();

    {
        std::set<std::string_view> seen;
        for (const auto& l : model.locations) {
            if (!seen.insert(l).second) {
                report(ViolationCode::DuplicateLocation, "location '" + l + "' declared twice");
            }
        }
    }
    {
        std::set<std::string_view> seen;
        for (const auto& c : model.clocks) {
            if (!seen.insert(c).second) {
                report(ViolationCode::DuplicateClock, "clock '" + c + "' declared twice");
            }
        }
    }

    if (model.delays.size() != num_clocks) {
        report(ViolationCode::MissingDelayMeasure, "expected " + std::to_string(num_clocks) + " delay measures, found " +
                                                       std::to_string(model.delays.size()));
    }
    for (std::size_t c = 0; c < model.delays.size(); ++c) {
        if (auto reason = check(model.delays[c])) {
            const std::string clock = c < num_clocks ? model.clocks[c] : "#" + std::to_string(c);
            report(ViolationCode::BadDistribution, "clock '" + clock + "': " + *reason);
        }
    }

    if (model.initial >= num_locations) {
        report(ViolationCode::BadInitial, "initial location index " + std::to_string(model.initial) + " out of range");
    }

    if (model.edges.size() != num_locations) {
        report(ViolationCode::EdgeTableMismatch, "edge table has " + std::to_string(model.edges.size()) +
                                                     " rows for " + std::to_string(num_locations) + " locations");
    }

    for (std::size_t l = 0; l < model.edges.size(); ++l) {
        const std::string from = l < num_locations ? model.locations[l] : "#" + std::to_string(l);
        std::map<ActionId, const Edge*> by_action;
        for (const Edge& e : model.edges[l]) {
            if (e.action >= model.actions.size()) {
                report(ViolationCode::UnknownAction, "edge from '" + from + "' uses undeclared action #" +
                                                         std::to_string(e.action));
            }
            auto [it, inserted] = by_action.emplace(e.action, &e);
            if (!inserted) {
                const std::string action =
                    e.action < model.actions.size() ? model.actions[e.action] : "#" + std::to_string(e.action);
                report(ViolationCode::DuplicateAction,
                       "two edges from '" + from + "' share action '" + action + "'");
            }
            for (const ClockId c : e.guard) {
                if (c >= num_clocks) {
                    report(ViolationCode::UnknownClock, "guard of edge from '" + from + "' uses unknown clock #" +
                                                            std::to_string(c));
                }
            }
            for (const ClockId c : e.restarts) {
                if (c >= num_clocks) {
                    report(ViolationCode::UnknownClock, "restart set of edge from '" + from +
                                                            "' uses unknown clock #" + std::to_string(c));
                }
            }
            if (e.targets.empty()) {
                report(ViolationCode::EmptyTargets, "edge from '" + from + "' has no targets");
                continue;
            }
            double total = 0.0;
            bool positive = true;
            for (const Target& t : e.targets) {
                if (t.location >= num_locations) {
                    report(ViolationCode::UnknownLocation,
                           "edge from '" + from + "' targets unknown location #" + std::to_string(t.location));
                }
                positive = positive && std::isfinite(t.weight) && t.weight > 0.0;
                total += t.weight;
            }
            if (!positive || std::abs(total - 1.0) > kWeightTolerance) {
                std::ostringstream os;
                os << "target weights of edge from '" << from << "' must be positive and sum to 1 (sum " << total
                   << ")";
                report(ViolationCode::BadWeights, os.str());
            }
        }
    }

    for (const auto& [name, locs] : model.goals) {
        for (const LocationId l : locs) {
            if (l >= num_locations) {
                report(ViolationCode::UnknownLocation,
                       "goal set '" + name + "' contains unknown location #" + std::to_string(l));
            }
        }
    }
    return out;
}

ModelBuilder::ModelBuilder(std::string name) {
    _model.name = std::move(name);
}

ModelBuilder& ModelBuilder::clock(std::string name, DistributionSpec dist) {
    _model.clocks.push_back(std::move(name));
    _model.delays.push_back(dist);
    return *this;
}

ModelBuilder& ModelBuilder::location(std::string name) {
    _model.locations.push_back(std::move(name));
    _model.edges.emplace_back();
    return *this;
}

ModelBuilder& ModelBuilder::initial(std::string_view location) {
    _model.initial = require_location(location);
    return *this;
}

ModelBuilder& ModelBuilder::edge(std::string_view from, std::initializer_list<std::string_view> guard,
                                 std::initializer_list<std::string_view> restarts, std::string_view to) {
    return edge(from, guard, restarts, {{std::string{to}, 1.0}});
}

ModelBuilder& ModelBuilder::edge(std::string_view from, std::initializer_list<std::string_view> guard,
                                 std::initializer_list<std::string_view> restarts,
                                 std::vector<std::pair<std::string, double>> targets) {
    const LocationId source = require_location(from);
    Edge e;
    e.guard = clock_set(guard);
    e.restarts = clock_set(restarts);
    e.action = auto_action(source);
    for (const auto& [to, weight] : targets) {
        e.targets.push_back({require_location(to), weight});
    }
    _model.edges[source].push_back(std::move(e));
    return *this;
}

ModelBuilder& ModelBuilder::goal(std::string name, std::initializer_list<std::string_view> locations) {
    std::vector<LocationId> ids;
    for (const auto l : locations) {
        ids.push_back(require_location(l));
    }
    std::sort(ids.begin(), ids.end());
    _model.goals[std::move(name)] = std::move(ids);
    return *this;
}

SaModel ModelBuilder::build() const {
    const auto violations = validate(_model);
    if (!violations.empty()) {
        throw ModelError("model " + _model.name + " is invalid: " + violations.front().message);
    }
    return _model;
}

LocationId ModelBuilder::require_location(std::string_view name) const {
    if (auto id = _model.location_index(name)) {
        return *id;
    }
    throw ModelError("unknown location '" + std::string{name} + "'");
}

std::vector<ClockId> ModelBuilder::clock_set(std::initializer_list<std::string_view> names) const {
    std::vector<ClockId> ids;
    for (const auto n : names) {
        const auto id = _model.clock_index(n);
        if (!id) {
            throw ModelError("unknown clock '" + std::string{n} + "'");
        }
        ids.push_back(*id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

ActionId ModelBuilder::auto_action(LocationId from) {
    const std::string label = "e" + std::to_string(_model.edges[from].size());
    if (auto id = _model.action_index(label)) {
        return *id;
    }
    _model.actions.push_back(label);
    return static_cast<ActionId>(_model.actions.size() - 1);
}

}  // namespace salss
