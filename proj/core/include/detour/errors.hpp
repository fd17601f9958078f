#pragma once

#include <stdexcept>
#include <string>

namespace detour {

// Bad input: malformed files, schema violations, invalid flags/arguments.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Structurally invalid data: self-loops, endpoints out of range, bad parameters.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation exceeded its state budget or a configured size cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical failure: eigensolver non-convergence, non-finite intermediates.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace detour
