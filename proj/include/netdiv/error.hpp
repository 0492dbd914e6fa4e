#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netdiv {

// Base of every exception thrown by the library. The C API maps each
// category onto a stable error code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad or inconsistent user configuration (family file, run config, flags).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed text input. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

// Node index outside [0, n).
class IndexError : public Error {
public:
    using Error::Error;
};

// A caller violated an operation precondition.
class ContractError : public Error {
public:
    using Error::Error;
};

// Requested functionality is not supported for the given input.
class CapabilityError : public Error {
public:
    using Error::Error;
};

// Anything that fails while running a pipeline (I/O, unrealizable seeds, ...).
class RuntimeFailure : public Error {
public:
    using Error::Error;
};

}  // namespace netdiv
