// errors.hpp: Exception hierarchy shared by the library and the CLI

#pragma once

#include <stdexcept>
#include <string>

namespace postmarkov {

// Caller violated a precondition (bad dimensions, negative delay, ...).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computation could not reach its accuracy target.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what, double t = 0.0)
        : std::runtime_error(what), t_(t) {}

    double time() const noexcept { return t_; }

private:
    double t_;
};

class StiffnessError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Fock-space truncation leaked population into the top level.
class TruncationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Two independent computation routes disagreed.
class ConsistencyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Scenario file problems. line() is 0 when the error is not tied to a line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace postmarkov
