// errors.hpp: error types shared across the library.
// Domain failures are thrown values, never crashes; the CLI maps them to exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace lamstd {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A caller broke a documented precondition of a checked operation.
struct PreconditionViolated : Error {
    using Error::Error;
};

// Redex index outside [0, countRedexes(term)).
struct IndexOutOfRange : Error {
    using Error::Error;
};

// A derivation node does not have the syntactic shape an operation requires.
struct ShapeMismatch : Error {
    using Error::Error;
};

// Two pieces being glued together do not meet at the same term.
struct EndpointMismatch : Error {
    using Error::Error;
};

// A reduction trace fails replay or alpha checking.
struct InvalidTrace : Error {
    using Error::Error;
};

// A term expected to be a normal form still has redexes.
struct NotNormalForm : Error {
    using Error::Error;
};

// Input text rejected by the parser; position is a 0-based byte offset.
struct ParseError : Error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& msg)
        : Error("parse error at " + std::to_string(pos) + ": " + msg), position(pos) {}
};

// A configured cap (enumeration frontier, etc.) was exceeded.
struct ResourceLimit : Error {
    using Error::Error;
};

// Internal bug signals. The standardization theorems guarantee these never
// fire on valid input; they exist so a broken invariant surfaces loudly.
struct MonotonicityViolation : Error {
    using Error::Error;
};
struct NonLeftmostStep : Error {
    using Error::Error;
};

}  // namespace lamstd
