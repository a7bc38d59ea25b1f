#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sudocrypt {

// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Malformed or truncated media container.
class FormatError : public Error {
public:
    using Error::Error;
};

// Well-formed container using a feature we do not decode (float WAV, 24-bit, ...).
class UnsupportedFormat : public FormatError {
public:
    using FormatError::FormatError;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Key file syntax error. line() is 1-based, 0 when not tied to a line.
class KeyParseError : public Error {
public:
    KeyParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Key content violates an invariant: broken Sudoku constraints, out-of-range fields.
class TamperedKey : public Error {
public:
    using Error::Error;
};

// Key and ciphertext disagree (shape, media type, length).
class KeyMismatch : public Error {
public:
    using Error::Error;
};

// Metric inputs of incompatible shape.
class DimensionError : public Error {
public:
    using Error::Error;
};

}  // namespace sudocrypt
