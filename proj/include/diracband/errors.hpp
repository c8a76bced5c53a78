#pragma once

#include <stdexcept>
#include <string>

namespace diracband {

// Base for every error raised by the library. Computation errors derive from
// ComputationError, invalid user input from InvalidInput; the CLI maps the two
// families onto distinct exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class ComputationError : public Error {
public:
    using Error::Error;
};

/// Parameters outside the admissible set (e.g. gamma >= m).
class InvalidParameters : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class IndexOutOfRange : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// Closed-form evaluation requested at a removable singular energy.
class DegenerateEnergy : public ComputationError {
public:
    using ComputationError::ComputationError;
};

/// A transformation-function component (or det u) vanished.
class SingularTransform : public ComputationError {
public:
    using ComputationError::ComputationError;
};

/// The closed-form Lyapunov function picked up a non-negligible imaginary part.
class NonRealDiscriminant : public ComputationError {
public:
    using ComputationError::ComputationError;
};

class GridTooCoarse : public ComputationError {
public:
    using ComputationError::ComputationError;
};

class NotAllowedBand : public ComputationError {
public:
    using ComputationError::ComputationError;
};

class StepCountTooSmall : public ComputationError {
public:
    using ComputationError::ComputationError;
};

/// Finite-difference stencil would leave the evaluation domain.
class DomainError : public ComputationError {
public:
    using ComputationError::ComputationError;
};

} // namespace diracband
