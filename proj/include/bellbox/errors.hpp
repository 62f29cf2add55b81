#pragma once

#include <stdexcept>
#include <string>

namespace bellbox {

// Base of every error this library raises; thrown directly only when an
// internal invariant breaks, e.g. a certificate fails its re-verification.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operands were built over different party counts.
struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// Party count outside the configured limit.
struct OutOfRangeError : Error {
    explicit OutOfRangeError(const std::string& msg) : Error(msg) {}
};

// A table handed to an operation is not a normalized probability table.
struct InvalidBoxError : Error {
    explicit InvalidBoxError(const std::string& msg) : Error(msg) {}
};

// A box required to be non-signaling is not; message names the witness.
struct SignalingError : Error {
    explicit SignalingError(const std::string& msg) : Error(msg) {}
};

// A functional required to be a Bell inequality takes a negative value on
// some deterministic strategy; message names the strategy.
struct NotAnInequalityError : Error {
    explicit NotAnInequalityError(const std::string& msg) : Error(msg) {}
};

// A functional with non-positive coefficient sum cannot be standardized.
struct NotNormalizableError : Error {
    explicit NotNormalizableError(const std::string& msg) : Error(msg) {}
};

// A serialized table is missing required entries.
struct IncompleteTableError : Error {
    explicit IncompleteTableError(const std::string& msg) : Error(msg) {}
};

// Malformed document or value text.
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace bellbox
