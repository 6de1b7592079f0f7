#pragma once

#include <stdexcept>
#include <string>

namespace saddleli {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Argument sits on a pole (log Gamma at non-positive integers, zeta at s = 1).
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// An iterative evaluation did not reach the requested accuracy within the
/// escalation budget of its PrecisionContext.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent input data (zero tables, descriptor files).
class DataError : public Error {
public:
    explicit DataError(const std::string& what, long line = 0)
        : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}

    long line() const noexcept { return line_; }

private:
    long line_;
};

/// The requested operation needs data the descriptor does not carry
/// (e.g. arithmetic coefficients of a synthetic descriptor).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Request exceeds a configured table size.
class CapacityError : public Error {
public:
    using Error::Error;
};

}  // namespace saddleli
