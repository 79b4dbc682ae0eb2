#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "salss/model.hpp"

namespace salss {

/// The file parsed but describes an ill-formed automaton.
class ValidationFailed : public std::runtime_error {
  public:
    explicit ValidationFailed(std::vector<Violation> violations);

    const std::vector<Violation>& violations() const noexcept {
        return _violations;
    }

  private:
    std::vector<Violation> _violations;
};

/// JSON model format:
///   clocks    : {name: {"dist": "uniform", "lo", "hi"} | {"dist": "constant", "c"} | {"dist": "exponential", "rate"}}
///   locations : [name, ...]
///   initial   : name
///   edges     : [{from, action, guard: [clock], restart: [clock], targets: [{to, weight}]}]
///   goals     : {name: [location]}
/// plus an optional "name". Clock order is the order of the "clocks" object;
/// actions are numbered by first appearance in "edges".
///
/// Throws ParseError (syntax or schema, with line/column) or ValidationFailed.
SaModel parse_model(std::string_view text, std::string default_name = "model");
SaModel load_model(const std::filesystem::path& path);

std::string serialize_model(const SaModel& model);
void save_model(const SaModel& model, const std::filesystem::path& path);

/// A builtin name (M0..M6) or a path to a model file.
SaModel resolve_model(std::string_view source);

}  // namespace salss
