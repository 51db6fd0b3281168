#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mazer {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid user input: bad parameter ranges, unnormalized states, malformed configs.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// Syntax or lookup failure while parsing an expression.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset, std::string expected)
        : Error(msg + " at offset " + std::to_string(offset)
                    + (expected.empty() ? "" : " (expected " + expected + ")")),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

/// Runtime failure while evaluating an expression (division by zero, sqrt of
/// a negative value, non-finite intermediate).
class EvalError : public Error {
public:
    explicit EvalError(const std::string& msg) : Error(msg) {}
};

/// Numerical failure in a scattering solve; carries the unitarity defect that
/// triggered it.
class SolverError : public Error {
public:
    SolverError(const std::string& msg, double defect)
        : Error(msg), defect_(defect) {}

    double defect() const { return defect_; }

private:
    double defect_ = 0.0;
};

/// Filesystem / serialization failure.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace mazer
