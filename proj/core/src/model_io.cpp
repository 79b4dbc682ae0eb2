#include "salss/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "salss/builtin.hpp"
#include "salss/errors.hpp"

namespace salss {

namespace {

using Json = nlohmann::ordered_json;

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
    std::size_t line = 1;
    std::size_t column = 1;
    offset = std::min(offset, text.size());
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

// Schema errors carry no token position; they are reported at the document start.
[[noreturn]] void schema_error(const std::string& message) {
    throw ParseError("invalid model file: " + message, 1, 1);
}

const Json& require(const Json& object, const char* key) {
    if (!object.is_object()) {
        schema_error(std::string{"expected an object holding '"} + key + "'");
    }
    const auto it = object.find(key);
    if (it == object.end()) {
        schema_error(std::string{"missing key '"} + key + "'");
    }
    return *it;
}

std::string require_string(const Json& object, const char* key) {
    const Json& v = require(object, key);
    if (!v.is_string()) {
        schema_error(std::string{"'"} + key + "' must be a string");
    }
    return v.get<std::string>();
}

double require_number(const Json& object, const char* key) {
    const Json& v = require(object, key);
    if (!v.is_number()) {
        schema_error(std::string{"'"} + key + "' must be a number");
    }
    return v.get<double>();
}

DistributionSpec parse_distribution(const std::string& clock, const Json& j) {
    const std::string kind = require_string(j, "dist");
    if (kind == "uniform") {
        return Uniform{require_number(j, "lo"), require_number(j, "hi")};
    }
    if (kind == "constant") {
        return Constant{require_number(j, "c")};
    }
    if (kind == "exponential") {
        return Exponential{require_number(j, "rate")};
    }
    schema_error("clock '" + clock + "' has unknown distribution '" + kind + "'");
}

Json distribution_json(const DistributionSpec& dist) {
    Json j;
    if (const auto* u = std::get_if<Uniform>(&dist)) {
        j["dist"] = "uniform";
        j["lo"] = u->lo;
        j["hi"] = u->hi;
    } else if (const auto* c = std::get_if<Constant>(&dist)) {
        j["dist"] = "constant";
        j["c"] = c->value;
    } else {
        j["dist"] = "exponential";
        j["rate"] = std::get<Exponential>(dist).rate;
    }
    return j;
}

std::vector<std::string> string_list(const Json& object, const char* key) {
    const Json& v = require(object, key);
    if (!v.is_array()) {
        schema_error(std::string{"'"} + key + "' must be a list");
    }
    std::vector<std::string> out;
    for (const Json& item : v) {
        if (!item.is_string()) {
            schema_error(std::string{"'"} + key + "' must contain only names");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

}  // namespace

ValidationFailed::ValidationFailed(std::vector<Violation> violations)
    : std::runtime_error(violations.empty() ? std::string{"model is invalid"}
                                            : "model is invalid: " + violations.front().message),
      _violations{std::move(violations)} {}

SaModel parse_model(std::string_view text, std::string default_name) {
    Json root;
    try {
        root = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(std::string{"malformed JSON: "} + e.what(), line, column);
    }
    if (!root.is_object()) {
        schema_error("top level must be an object");
    }

    SaModel model;
    std::vector<Violation> violations;
    auto unknown = [&violations](ViolationCode code, std::string message) {
        violations.push_back({code, std::move(message)});
    };

    model.name = root.contains("name") && root["name"].is_string() ? root["name"].get<std::string>()
                                                                    : std::move(default_name);

    const Json& clocks = require(root, "clocks");
    if (!clocks.is_object()) {
        schema_error("'clocks' must be an object");
    }
    for (const auto& [name, spec] : clocks.items()) {
        model.clocks.push_back(name);
        model.delays.push_back(parse_distribution(name, spec));
    }

    model.locations = string_list(root, "locations");
    model.edges.resize(model.locations.size());

    const std::string initial = require_string(root, "initial");
    bool initial_unknown = false;
    if (auto id = model.location_index(initial)) {
        model.initial = *id;
    } else {
        initial_unknown = true;
        model.initial = static_cast<LocationId>(model.locations.size());
        unknown(ViolationCode::BadInitial, "initial location '" + initial + "' is not declared");
    }

    const Json& edges = require(root, "edges");
    if (!edges.is_array()) {
        schema_error("'edges' must be a list");
    }
    for (const Json& je : edges) {
        const std::string from = require_string(je, "from");
        const std::string action = require_string(je, "action");
        const auto source = model.location_index(from);
        if (!source) {
            unknown(ViolationCode::UnknownLocation, "edge source '" + from + "' is not declared");
            continue;
        }
        Edge e;
        auto clock_set = [&](const char* key) {
            std::vector<ClockId> ids;
            for (const auto& c : string_list(je, key)) {
                if (auto id = model.clock_index(c)) {
                    ids.push_back(*id);
                } else {
                    unknown(ViolationCode::UnknownClock, "edge from '" + from + "' references undeclared clock '" + c + "'");
                }
            }
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            return ids;
        };
        e.guard = clock_set("guard");
        e.restarts = clock_set("restart");
        if (auto id = model.action_index(action)) {
            e.action = *id;
        } else {
            model.actions.push_back(action);
            e.action = static_cast<ActionId>(model.actions.size() - 1);
        }
        const Json& targets = require(je, "targets");
        if (!targets.is_array()) {
            schema_error("'targets' must be a list");
        }
        for (const Json& jt : targets) {
            const std::string to = require_string(jt, "to");
            const double weight = require_number(jt, "weight");
            if (auto id = model.location_index(to)) {
                e.targets.push_back({*id, weight});
            } else {
                unknown(ViolationCode::UnknownLocation, "edge from '" + from + "' targets undeclared location '" + to + "'");
            }
        }
        model.edges[*source].push_back(std::move(e));
    }

    const Json& goals = require(root, "goals");
    if (!goals.is_object()) {
        schema_error("'goals' must be an object");
    }
    for (const auto& [name, locs] : goals.items()) {
        if (!locs.is_array()) {
            schema_error("goal set '" + name + "' must be a list");
        }
        std::vector<LocationId> ids;
        for (const Json& l : locs) {
            if (!l.is_string()) {
                schema_error("goal set '" + name + "' must contain only names");
            }
            if (auto id = model.location_index(l.get<std::string>())) {
                ids.push_back(*id);
            } else {
                unknown(ViolationCode::UnknownLocation,
                        "goal set '" + name + "' contains undeclared location '" + l.get<std::string>() + "'");
            }
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        model.goals[name] = std::move(ids);
    }

    for (auto& v : validate(model)) {
        // Already reported above with its spelling.
        if (v.code == ViolationCode::BadInitial && initial_unknown) {
            continue;
        }
        violations.push_back(std::move(v));
    }
    if (!violations.empty()) {
        throw ValidationFailed(std::move(violations));
    }
    return model;
}

SaModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw NotFound("cannot open model file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model(buffer.str(), path.stem().string());
}

std::string serialize_model(const SaModel& model) {
    Json root;
    root["name"] = model.name;
    Json clocks = Json::object();
    for (std::size_t c = 0; c < model.clocks.size(); ++c) {
        clocks[model.clocks[c]] = distribution_json(model.delays.at(c));
    }
    root["clocks"] = std::move(clocks);
    root["locations"] = model.locations;
    root["initial"] = model.locations.at(model.initial);

    auto names = [&](const std::vector<ClockId>& ids) {
        Json list = Json::array();
        for (const ClockId c : ids) {
            list.push_back(model.clocks.at(c));
        }
        return list;
    };
    Json edges = Json::array();
    for (std::size_t l = 0; l < model.edges.size(); ++l) {
        for (const Edge& e : model.edges[l]) {
            Json je;
            je["from"] = model.locations.at(l);
            je["action"] = model.actions.at(e.action);
            je["guard"] = names(e.guard);
            je["restart"] = names(e.restarts);
            Json targets = Json::array();
            for (const Target& t : e.targets) {
                targets.push_back(Json{{"to", model.locations.at(t.location)}, {"weight", t.weight}});
            }
            je["targets"] = std::move(targets);
            edges.push_back(std::move(je));
        }
    }
    root["edges"] = std::move(edges);

    Json goals = Json::object();
    for (const auto& [name, locs] : model.goals) {
        Json list = Json::array();
        for (const LocationId l : locs) {
            list.push_back(model.locations.at(l));
        }
        goals[name] = std::move(list);
    }
    root["goals"] = std::move(goals);
    return root.dump(2) + "\n";
}

void save_model(const SaModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write model file " + path.string());
    }
    out << serialize_model(model);
}

SaModel resolve_model(std::string_view source) {
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), source) != names.end()) {
        return builtin(source);
    }
    return load_model(std::filesystem::path{std::string{source}});
}

}  // namespace salss
