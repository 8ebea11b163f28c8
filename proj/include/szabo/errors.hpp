#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace szabo {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed expression or manifest text. `offset` is the byte offset into
/// the offending string (for manifests, the column within the line).
struct SyntaxError : Error {
    std::size_t offset;
    SyntaxError(const std::string& msg, std::size_t off)
        : Error(msg + " (offset " + std::to_string(off) + ")"), offset(off) {}
};

/// An identifier that is not declared in the active variable table.
struct UnknownIdentifier : Error {
    std::string name;
    std::size_t offset;
    UnknownIdentifier(const std::string& ident, std::size_t off)
        : Error("unknown identifier '" + ident + "' (offset " + std::to_string(off) + ")"),
          name(ident), offset(off) {}
};

/// A '^' with a negative exponent; only nonnegative integer powers exist here.
struct NegativeExponent : Error {
    std::size_t offset;
    explicit NegativeExponent(std::size_t off)
        : Error("negative exponent (offset " + std::to_string(off) + ")"), offset(off) {}
};

/// Division by an expression that is identically zero, or evaluation of a
/// quotient whose denominator vanishes at the given point.
struct DivisionByZero : Error {
    using Error::Error;
    DivisionByZero() : Error("division by zero") {}
};

/// Evaluation requested for a variable with no binding.
struct UnboundVariable : Error {
    std::string name;
    explicit UnboundVariable(const std::string& var)
        : Error("unbound variable '" + var + "'"), name(var) {}
};

/// Substitution produced a denominator that is identically zero.
struct DenominatorVanishes : Error {
    using Error::Error;
    DenominatorVanishes() : Error("substitution makes a denominator identically zero") {}
};

/// Structurally invalid input (manifest contents, bad indices, wrong
/// variable kinds, inconsistent sections, ...).
struct ValidationError : Error {
    using Error::Error;
};

/// File could not be read or written.
struct IoError : Error {
    using Error::Error;
};

/// Objects of incompatible dimensions were combined.
struct DimensionMismatch : Error {
    using Error::Error;
};

} // namespace szabo
