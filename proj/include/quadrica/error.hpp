#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quadrica {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed polynomial text. `position` is a 0-based offset into the input.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& what)
        : Error("parse error at position " + std::to_string(position) + ": " + what),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Arguments violate an operation's precondition (zero polynomial, variable
/// list mismatch, illegal move, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input lies outside the class of polynomials and curves the engine decides
/// exactly. Raised instead of returning an unverified answer.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

}  // namespace quadrica
