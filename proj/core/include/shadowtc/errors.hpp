#pragma once

#include <stdexcept>
#include <string>

namespace shadowtc {

/// Input lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A bracketed root search failed to find or isolate the root.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation is undefined in the degenerate regime theta = 1.
class UnsupportedRegime : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Simulated wealth became non-positive (admissibility breach).
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature could not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace shadowtc
