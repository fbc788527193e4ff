#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jeq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A vertex (k-subset) that does not belong to the graph it is used with.
class InvalidVertex : public Error {
public:
    using Error::Error;
};

/// An argument outside the domain of an operation (wrong arity, repeated
/// elements, non-equitable input where an equitable one is required, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An eigenfunction that matches none of the known templates.
class ClassificationFailure : public Error {
public:
    using Error::Error;
};

/// Malformed partition file. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace jeq
