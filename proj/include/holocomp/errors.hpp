#pragma once

#include <stdexcept>
#include <string>

namespace holocomp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (|z| >= 1, beta <= -1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Quadrature or truncation resolution insufficient for the requested tolerance.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double estimate)
        : Error(what + " (error estimate " + std::to_string(estimate) + ")"), estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

/// Root finder residual too large.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A preimage landed within the ambiguity band of the unit circle.
class BoundaryAmbiguityError : public Error {
public:
    using Error::Error;
};

/// An integrand returned NaN or infinity at a quadrature node.
class NonFiniteError : public Error {
public:
    NonFiniteError(const std::string& what, std::size_t outer, std::size_t inner)
        : Error(what + " at node (" + std::to_string(outer) + ", " + std::to_string(inner) + ")"),
          outer_(outer), inner_(inner) {}
    std::size_t outer() const noexcept { return outer_; }
    std::size_t inner() const noexcept { return inner_; }

private:
    std::size_t outer_;
    std::size_t inner_;
};

/// Operation requires a different symbol variant (e.g. a separated bidisc symbol).
class SymbolKindError : public Error {
public:
    using Error::Error;
};

/// Two independent estimators of the same quantity disagree.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Every grid point was flagged, so no bound can be formed.
class UndefinedBoundError : public Error {
public:
    using Error::Error;
};

/// Requested output is not available for this report (e.g. a heatmap without a grid).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Job configuration does not match the schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

} // namespace holocomp
