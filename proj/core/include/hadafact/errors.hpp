#pragma once

#include <stdexcept>
#include <string>

namespace hadafact {

/// DSL syntax or lexical error with a 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line, int col)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
          line_(line),
          col_(col) {}

    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

/// Raised when a requested construction exceeds a configured cost cap.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hadafact
