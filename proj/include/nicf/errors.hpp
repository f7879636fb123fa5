#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nicf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
public:
    FieldMismatch() : Error("operands belong to different fields") {}
};

/// A field parameter outside the supported set (not squarefree, or not
/// Euclidean where a Euclidean field is required).
class InvalidField : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::string msg, std::size_t offset)
        : Error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

class DivisionNearZero : public Error {
public:
    DivisionNearZero() : Error("divisor cannot be separated from zero at maximum precision") {}
};

/// Raised when the adaptive precision loop hits its cap. `index` is the
/// expansion step reached, when the failure happened inside an expansion.
class PrecisionExhausted : public Error {
public:
    explicit PrecisionExhausted(long cap_bits, long index = -1)
        : Error("precision cap of " + std::to_string(cap_bits) + " bits exhausted" +
                (index >= 0 ? " at step " + std::to_string(index) : std::string())),
          cap_(cap_bits), index_(index) {}
    long cap_bits() const noexcept { return cap_; }
    long index() const noexcept { return index_; }

private:
    long cap_;
    long index_;
};

/// Domain violation of an operation's precondition (definite form,
/// non-unit determinant, u outside [-2,2], ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    IndexOutOfRange(std::size_t idx, std::size_t size)
        : Error("index " + std::to_string(idx) + " out of range (size " + std::to_string(size) + ")") {}
};

}  // namespace nicf
