#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pam3 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A frame column holds the reserved (0, 0) pair and cannot be demodulated.
class InvalidPair : public Error {
public:
    explicit InvalidPair(std::size_t column)
        : Error("column " + std::to_string(column) + " holds the reserved (0,0) pair"),
          column_(column) {}

    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

class WrongAlgorithm : public Error {
public:
    using Error::Error;
};

class InvalidFlag : public Error {
public:
    using Error::Error;
};

/// Baseline power is zero, so a ratio against it is undefined.
class ZeroBaseline : public Error {
public:
    using Error::Error;
};

class EmptyStream : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

/// Malformed input. line() is 1-based, or 0 when no line applies.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace pam3
