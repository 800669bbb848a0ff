#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nlds {

/// Raised when a time-evolution produced a non-finite value. Carries the
/// 0-based index of the step that first went bad.
class numerical_failure : public std::runtime_error {
public:
    numerical_failure(std::string what, long step)
        : std::runtime_error(std::move(what)), step_index(step) {}
    long step_index;
};

/// Expression parsing error with a 1-based column position.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t col)
        : std::runtime_error(what + " at column " + std::to_string(col)),
          column(col) {}
    std::size_t column;
};

/// File / container errors (unreadable path, bad magic, short payload).
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nlds
