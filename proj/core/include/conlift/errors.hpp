#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conlift {

enum class ErrorKind {
    DomainViolation,      // state at or beyond the lifting guard band
    NonFiniteInput,       // NaN or infinity where a finite value is required
    SingularityDetected,  // a lifted field that must be nonzero is zero or non-finite
    InvalidParams,        // bad constructor arguments (plant, safe set, gains)
    StepRejected,         // integrator step aborted, carries the offending time
    ConfigError,          // experiment configuration failed validation
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class DomainViolation : public Error {
public:
    explicit DomainViolation(const std::string& what)
        : Error(ErrorKind::DomainViolation, what) {}
};

class NonFiniteInput : public Error {
public:
    explicit NonFiniteInput(const std::string& what)
        : Error(ErrorKind::NonFiniteInput, what) {}
};

class SingularityDetected : public Error {
public:
    explicit SingularityDetected(const std::string& what)
        : Error(ErrorKind::SingularityDetected, what) {}
};

class InvalidParams : public Error {
public:
    explicit InvalidParams(const std::string& what)
        : Error(ErrorKind::InvalidParams, what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what)
        : Error(ErrorKind::ConfigError, what) {}
};

/// Wraps the error that aborted an integration step together with the
/// simulation time at which the step started.
class StepRejected : public Error {
public:
    StepRejected(double time, ErrorKind cause, const std::string& what)
        : Error(ErrorKind::StepRejected, what), time_(time), cause_(cause) {}

    [[nodiscard]] double time() const noexcept { return time_; }
    [[nodiscard]] ErrorKind cause() const noexcept { return cause_; }

private:
    double time_;
    ErrorKind cause_;
};

}  // namespace conlift
