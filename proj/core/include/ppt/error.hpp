#pragma once

#include <stdexcept>
#include <string>

namespace ppt {

/// Malformed input text. Line and column are 1-based; zero means "unknown".
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error(format(line, column, message)), line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    static std::string format(int line, int column, const std::string& message) {
        if (line <= 0) {
            return message;
        }
        return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    }

    int line_;
    int column_;
};

/// An event that cannot be applied to the current level state, or a word
/// that does not close up. `ordinal` is the 1-based event position (0 when
/// the failure is about the word as a whole).
class SimulationError : public std::runtime_error {
public:
    SimulationError(int ordinal, const std::string& message)
        : std::runtime_error(ordinal > 0 ? "event " + std::to_string(ordinal) + ": " + message
                                         : message),
          ordinal_(ordinal) {}

    int ordinal() const noexcept { return ordinal_; }

private:
    int ordinal_;
};

/// Input is well formed but outside an operation's domain.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ppt
