#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "salss/model.hpp"

namespace salss {

/// The distinguishing automata M0..M6. Each has goal sets "win" = {yes} and
/// "lose" = {no}; edges are labelled e0, e1, ... per source location in
/// left-to-right drawing order. Throws NotFound for other names.
SaModel builtin(std::string_view name);

std::vector<std::string> builtin_names();

}  // namespace salss
