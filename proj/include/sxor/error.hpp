#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sxor {

// Base of everything the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by the zero polynomial") {}
};

// b is not an exact multiple of h, or the quotient spills past the
// requested length.
class InconsistentDivision : public Error {
public:
    using Error::Error;
};

class TrailingBits : public Error {
public:
    using Error::Error;
};

class ContextMismatch : public Error {
public:
    ContextMismatch() : Error("field elements belong to different GF(2^m) contexts") {}
};

class Singular : public Error {
public:
    using Error::Error;
};

class SingularSubmatrix : public Error {
public:
    using Error::Error;
};

class NotMonomialMatrix : public Error {
public:
    using Error::Error;
};

// Zigzag decoding ran out of exposed bits.
class Stuck : public Error {
public:
    Stuck(std::size_t resolved, std::size_t total)
        : Error("zigzag decoding stuck after resolving " + std::to_string(resolved) + " of " +
                std::to_string(total) + " source bits"),
          resolved_(resolved), total_(total) {}

    std::size_t resolved() const noexcept { return resolved_; }
    std::size_t total() const noexcept { return total_; }

private:
    std::size_t resolved_;
    std::size_t total_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(line == 0 ? what
                          : "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace sxor
