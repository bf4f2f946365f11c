#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace padyn {

/// Root of every exception raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// User-supplied data violates a precondition (bad literal, zero parameter, composite prime).
class InvalidInput : public Error {
public:
    using Error::Error;
};

class ParseError : public InvalidInput {
public:
    ParseError(std::string message, std::size_t column)
        : InvalidInput(std::move(message)), column_(column) {}

    /// 1-based column of the offending character in the literal.
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

class PrimeMismatch : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// The parameters are incompatible with poles in Q_p (odd v(a) on the alpha == beta branch).
class InconsistentParameters : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// Parameters are valid but fall outside the analysed regime.
class Unsupported : public Error {
public:
    using Error::Error;
};

/// A formula was requested outside the hypotheses under which it holds.
class NotApplicable : public Error {
public:
    using Error::Error;
};

class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

/// An iterate landed on a root of the denominator x^2 + cx + a.
class PoleHit : public Error {
public:
    PoleHit(std::string point, std::string message)
        : Error(std::move(message)), point_(std::move(point)) {}

    const std::string& point() const noexcept { return point_; }

private:
    std::string point_;
};

/// An internal cross-check disagreed. Always a bug, never a property of the input.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

}  // namespace padyn
