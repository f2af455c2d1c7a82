#pragma once

#include <stdexcept>
#include <string>

namespace dmatch {

/// Malformed or out-of-range input (bad vertex id, inconsistent model, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold for its arguments.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A configured size guard was exceeded (separator budget, brute-force limit).
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Text-format error carrying the 1-based line it was detected on.
class ParseError : public InputError {
public:
    ParseError(int line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace dmatch
