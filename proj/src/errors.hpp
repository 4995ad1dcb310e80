#pragma once
// Error hierarchy shared by all engine modules. The C API maps these onto
// status codes at the library boundary.

#include <stdexcept>
#include <string>

namespace smartmtd {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    size_t line() const { return line_; }

private:
    size_t line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Invalid parameter value; message names the parameter and its bound.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Random walk failed to reach its tolerance within the iteration cap.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& msg, double residual)
        : Error(msg), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_ = 0.0;
};

// A synthetic-data spec that cannot be generated as requested.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

// Broken internal invariant (a bug, not a user error).
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace smartmtd
