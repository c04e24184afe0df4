#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace meanref {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain of the operation (e.g. a log-type
// mean evaluated at zero, a negative weight, q >= 1).
class DomainError : public Error {
public:
    using Error::Error;
};

// Evaluation produced a non-finite value despite domain checks.
class NonFiniteError : public Error {
public:
    using Error::Error;
};

// An iteration exhausted its budget without meeting its tolerance.
class NoConvergence : public Error {
public:
    using Error::Error;
};

// Paired sequences of different lengths.
class LengthMismatch : public Error {
public:
    using Error::Error;
};

// Aczel deficiency condition x0^2 >= sum x_k^2 violated.
class AdmissibilityError : public Error {
public:
    using Error::Error;
};

class ZeroVectorError : public Error {
public:
    using Error::Error;
};

// Quadrature node budget exhausted before the tolerance was met.
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

// Jackson q-series whose sampled terms do not decay.
class DivergentSeries : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

// Text could not be parsed; carries the byte offset and what was expected.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset, std::string expected)
        : Error(msg + " at offset " + std::to_string(offset) + " (expected " + expected + ")"),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

// Expression evaluation hit a domain violation; carries the offending node.
class EvalError : public Error {
public:
    EvalError(const std::string& node, double input)
        : Error("domain violation in '" + node + "' at input " + std::to_string(input)),
          node_(node),
          input_(input) {}

    const std::string& node() const noexcept { return node_; }
    double input() const noexcept { return input_; }

private:
    std::string node_;
    double input_;
};

}  // namespace meanref
