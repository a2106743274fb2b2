#pragma once

#include <stdexcept>
#include <string>

namespace qrelax {

// Base of every error raised by the library. Subclasses map onto the CLI
// exit codes (argument/config errors -> 2, instabilities -> 3).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

// Input outside the mathematical domain of an operation (grid too small,
// nonpositive density where a logarithm is taken, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Floating-point range exceeded (exp overflow).
class RangeError : public Error {
public:
    using Error::Error;
};

class ContractViolation : public Error {
public:
    using Error::Error;
};

class DegenerateStateError : public DomainError {
public:
    using DomainError::DomainError;
};

// Time stepping produced a state violating a monitored invariant.
class InstabilityError : public Error {
public:
    using Error::Error;
};

// Step size or resolution rejected before integration starts.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace qrelax
