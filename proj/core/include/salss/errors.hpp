#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace salss {

/// Malformed model data or a reference to something the model does not declare.
class ModelError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (e.g. asked for a delay while a jump is enabled).
class ContractViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

class NotFound : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised by step() when neither a jump nor a delay is possible.
class Timelock : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised in strict estimation mode when any run hit the step bound.
class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error(message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          _line{line},
          _column{column} {}

    std::size_t line() const noexcept {
        return _line;
    }
    std::size_t column() const noexcept {
        return _column;
    }

  private:
    std::size_t _line;
    std::size_t _column;
};

}  // namespace salss
