#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cocite {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input row; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Inputs violate a cross-reference or structural requirement.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Unknown node, code, or key.
class LookupError : public Error {
public:
    using Error::Error;
};

/// Metric has no defined value for this graph (too small, degenerate, ...).
class UndefinedMetricError : public Error {
public:
    using Error::Error;
};

/// Parameter outside its feasible range (k < 2, more classes than values, ...).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace cocite
