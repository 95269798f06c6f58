#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symkit {

/// Base class of every error raised by the kernel.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
    explicit DivisionByZero(const std::string& what) : Error(what) {}
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// Raised by subs when a binding's left-hand side is not a symbol.
class UnsupportedPattern : public Error {
public:
    using Error::Error;
};

/// Raised by diff when a function has no derivative rule.
class UnevaluatedDerivative : public Error {
public:
    using Error::Error;
};

class SeriesError : public Error {
public:
    using Error::Error;
};

/// log(0), Gamma at a nonpositive integer, zeta(1) and friends.
class PoleError : public Error {
public:
    using Error::Error;
};

class RegistrationError : public Error {
public:
    using Error::Error;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("matrix is singular") {}
    using Error::Error;
};

class NoUniqueSolution : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position)), position_(position) {}

    /// 1-based character position of the offending input.
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace symkit
