#pragma once

#include <stdexcept>
#include <string>

namespace nfkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The input is mathematically invalid for the operation (reducible
/// polynomial, division by zero, parent mismatch, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A configured limit was hit: degree cap, iteration budget, an integer
/// that could not be factored, an unsupported index-divisor case.
class LimitError : public Error {
public:
    using Error::Error;
};

/// Malformed textual input; `position` is the 0-based offset of the
/// offending character.
class ParseError : public Error {
public:
    ParseError(std::string const& msg, std::size_t position)
        : Error(msg + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

}  // namespace nfkit
