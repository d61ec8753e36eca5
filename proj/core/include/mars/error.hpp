#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mars {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid sizes, parameters or configuration values.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A spectrum that should come from a real field is far from conjugate symmetric.
class NumericalCorruptionError : public Error {
public:
    using Error::Error;
};

/// Non-finite values or a field exceeding the blow-up ceiling.
class BlowUpError : public Error {
public:
    BlowUpError(const std::string& what, std::size_t step)
        : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Film height reached zero.
class RuptureError : public Error {
public:
    using Error::Error;
};

/// Two sides of an interface came closer than the quadrature can resolve.
class ProximityError : public Error {
public:
    using Error::Error;
};

/// Degenerate curve parametrization (vanishing arclength derivative).
class GeometryError : public Error {
public:
    using Error::Error;
};

}  // namespace mars
