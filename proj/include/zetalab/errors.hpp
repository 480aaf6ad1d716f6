#pragma once

#include <stdexcept>
#include <string>

namespace zetalab {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the domain of an operation (bad parameters, invalid objects).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation point inside the guard band of a pole.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A requested accuracy cannot be certified within the term/panel budget.
class AccuracyError : public Error {
public:
    using Error::Error;
};

/// A truncated torus point or coefficient table does not cover a request.
class TruncationError : public DomainError {
public:
    using DomainError::DomainError;
};

class InsufficientDataError : public DomainError {
public:
    using DomainError::DomainError;
};

class GridMismatchError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Target rectangle violates the strip it must live in.
class RegionError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Independence regime cannot be resolved (strict mode).
class RegimeError : public Error {
public:
    using Error::Error;
};

}  // namespace zetalab
