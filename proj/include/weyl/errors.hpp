#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace weyl
{

// Base of every exception thrown by the engine.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Operands built for different (dim, trunc) pairs, or an invalid Context.
class ContextError : public Error
{
public:
    using Error::Error;
};

// An operation's documented precondition does not hold.
class PreconditionError : public Error
{
public:
    using Error::Error;
};

// Matrix without an inverse.
class SingularMatrixError : public Error
{
public:
    using Error::Error;
};

// Raised when an internal identity that must hold by construction fails.
class InternalError : public Error
{
public:
    using Error::Error;
};

// Expression syntax error, with a 1-based position into the source text.
class ParseError : public Error
{
public:
    ParseError(const std::string &what, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line), column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Malformed record file (wrong schema, missing field, bad JSON).
class FormatError : public Error
{
public:
    using Error::Error;
};

} // namespace weyl
