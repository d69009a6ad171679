#pragma once

#include <stdexcept>
#include <string>

namespace voilab {

/// Base class of every error raised by voilab.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (rational literal, JSON document, belief string).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Operands whose shapes do not agree (state counts, outcome counts).
class DimensionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A proved result (decomposition, localization) failed on concrete input.
/// `reproducer` holds the serialized instance and belief.
class TheoremViolation : public Error {
public:
    TheoremViolation(const std::string& what, std::string reproducer)
        : Error(what), reproducer_(std::move(reproducer)) {}
    const std::string& reproducer() const noexcept { return reproducer_; }

private:
    std::string reproducer_;
};

} // namespace voilab
