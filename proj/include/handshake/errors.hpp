#pragma once

#include <stdexcept>
#include <string>

namespace handshake {

/// Base class for every error this library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two values live in different Hilbert spaces (labels or dimensions differ).
class SpaceMismatchError : public Error {
public:
    using Error::Error;
};

/// A state that must be normalized is not.
class NormalizationError : public Error {
public:
    using Error::Error;
};

/// An operator flagged as projector/unitary fails the corresponding algebraic check.
class InvalidOperatorError : public Error {
public:
    using Error::Error;
};

/// A set of absorbers is inconsistent (non-orthogonal projectors forced together).
class InvalidAbsorberSetError : public Error {
public:
    using Error::Error;
};

/// A cascade stage is in an impossible configuration (e.g. weights sum past 1).
class InvalidStageError : public Error {
public:
    using Error::Error;
};

/// An incipient transaction with non-negligible weight violates a conservation
/// rule. Signals a scenario construction bug: the amplitude structure should
/// already give such branches zero weight.
class ConservationViolationError : public Error {
public:
    using Error::Error;
};

/// A named scenario (or other keyed entity) does not exist.
class NotFoundError : public Error {
public:
    using Error::Error;
};

/// An input value is malformed or out of range.
class ParameterError : public Error {
public:
    using Error::Error;
};

}  // namespace handshake
