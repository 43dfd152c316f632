#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cliquecover {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation (p outside [0,1], ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// The instance is too large for the requested computation (clique budget, node caps).
class SizingError : public Error {
public:
    using Error::Error;
};

// Malformed text input. line() is 1-based; 0 means "not tied to a line".
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace cliquecover
