#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace predprey {

/// Base class for numerical failures. The CLI maps these to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario/config validation failure. The CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyGridError : public Error {
public:
    using Error::Error;
};

/// A monotone bracketing search ran out of room (search limit too small).
class BracketNotFoundError : public Error {
public:
    using Error::Error;
};

/// The interior-equilibrium existence condition holds but the scan found no
/// sign change; signals a scan-resolution problem rather than absence.
class NoSignChangeError : public Error {
public:
    using Error::Error;
};

/// One of the one-step map denominators was <= 0 at the evaluated state,
/// which can only happen for scheme weights outside the positivity region.
class NonpositiveDenominatorError : public Error {
public:
    explicit NonpositiveDenominatorError(const std::string& msg,
                                         std::optional<std::size_t> step = std::nullopt)
        : Error(msg), step_(step) {}

    /// Index of the failing step when raised from a trajectory iteration.
    std::optional<std::size_t> step_index() const { return step_; }

private:
    std::optional<std::size_t> step_;
};

class MissingEquilibriumError : public Error {
public:
    using Error::Error;
};

class InfeasibleSchemeError : public Error {
public:
    using Error::Error;
};

class NotAFixedPointError : public Error {
public:
    using Error::Error;
};

class NonFiniteValueError : public Error {
public:
    using Error::Error;
};

class ReferenceUnstableError : public Error {
public:
    using Error::Error;
};

} // namespace predprey
