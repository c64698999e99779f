#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace cosfunk {

/// Base class for every error raised by the library. `kind()` is a stable,
/// machine-readable tag used by the CLI error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& m) : Error("invalid-argument", m) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error("domain-error", m) {}
};

/// A meromorphic quantity was requested at (or within tolerance of) a pole.
class PoleError : public Error {
public:
    PoleError(const std::string& m, std::complex<double> location)
        : Error("pole-error", m), location_(location) {}
    std::complex<double> location() const noexcept { return location_; }

private:
    std::complex<double> location_;
};

struct UnsupportedGrid : Error {
    explicit UnsupportedGrid(const std::string& m) : Error("unsupported-grid", m) {}
};

struct ResolutionError : Error {
    explicit ResolutionError(const std::string& m) : Error("resolution-error", m) {}
};

struct DivergenceError : Error {
    explicit DivergenceError(const std::string& m) : Error("divergence-error", m) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& m) : Error("precondition-error", m) {}
};

struct ExcludedComponent : Error {
    explicit ExcludedComponent(const std::string& m) : Error("excluded-component", m) {}
};

struct InsufficientSamples : Error {
    explicit InsufficientSamples(const std::string& m) : Error("insufficient-samples", m) {}
};

struct Unsupported : Error {
    explicit Unsupported(const std::string& m) : Error("unsupported", m) {}
};

/// Raised by every closed-form multiplier when the quadrature oracle gate failed.
struct GateError : Error {
    explicit GateError(const std::string& m) : Error("oracle-gate", m) {}
};

}  // namespace cosfunk
