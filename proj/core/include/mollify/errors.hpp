#pragma once

#include <stdexcept>
#include <string>

namespace mollify {

// Usage errors (exit code 2 at the CLI): the request itself is malformed.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public UsageError {
public:
    using UsageError::UsageError;
};

class ConfigError : public UsageError {
public:
    using UsageError::UsageError;
};

// Computational errors (exit code 1): a well-formed request that cannot be evaluated.
class ComputeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateInputError : public ComputeError {
public:
    using ComputeError::ComputeError;
};

class DomainError : public ComputeError {
public:
    using ComputeError::ComputeError;
};

class InvalidBoundsError : public ComputeError {
public:
    using ComputeError::ComputeError;
};

class InfeasibleError : public ComputeError {
public:
    using ComputeError::ComputeError;
};

class NumericalFailure : public ComputeError {
public:
    using ComputeError::ComputeError;
};

}  // namespace mollify
