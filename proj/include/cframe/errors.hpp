#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cframe {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad inputs: rejected documents, violated preconditions, unmet hypotheses.
struct InputError : Error {
    using Error::Error;
};

// Numerical breakdown inside an otherwise valid computation.
struct NumericalError : Error {
    using Error::Error;
};

// linalg
struct NotSelfAdjoint : InputError { using InputError::InputError; };
struct NotPositive    : InputError { using InputError::InputError; };
struct NoConvergence  : NumericalError { using NumericalError::NumericalError; };
struct SingularMatrix : NumericalError { using NumericalError::NumericalError; };

// measure
struct BadInterval     : InputError { using InputError::InputError; };
struct NonpositiveMass : InputError { using InputError::InputError; };
struct LengthMismatch  : InputError { using InputError::InputError; };

// frames
struct DimMismatch           : InputError { using InputError::InputError; };
struct SpaceMismatch         : InputError { using InputError::InputError; };
struct NotAFrame             : InputError { using InputError::InputError; };
struct NotParsevalControlled : InputError { using InputError::InputError; };
struct NotControlledFrame    : InputError { using InputError::InputError; };
struct NonpositiveAlpha      : InputError { using InputError::InputError; };
struct NotCommuting          : InputError { using InputError::InputError; };
struct NotAProjection        : InputError { using InputError::InputError; };
struct NotNormal             : InputError { using InputError::InputError; };
struct EigenbasisMismatch    : InputError { using InputError::InputError; };

// expression language
struct SyntaxError : InputError {
    std::size_t offset;
    SyntaxError(std::size_t at, const std::string& expected)
        : InputError("syntax error at offset " + std::to_string(at) + ": expected " + expected),
          offset(at) {}
};
struct UnknownFunction : InputError {
    explicit UnknownFunction(const std::string& name)
        : InputError("unknown function '" + name + "'") {}
};
struct DivisionByZero : InputError {
    explicit DivisionByZero(double s)
        : InputError("division by zero at s = " + std::to_string(s)) {}
};
struct DomainError : InputError { using InputError::InputError; };

// spec files
struct ParseError : InputError {
    std::size_t line;
    ParseError(std::size_t at, const std::string& message)
        : InputError("line " + std::to_string(at) + ": " + message), line(at) {}
};
struct ValidationError : InputError {
    std::string field;
    ValidationError(const std::string& fld, const std::string& reason)
        : InputError("invalid '" + fld + "': " + reason), field(fld) {}
};

} // namespace cframe
