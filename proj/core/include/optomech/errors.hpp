#pragma once

#include <stdexcept>
#include <string>

namespace optomech {

// Base class so callers can catch everything from this library at once.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Drift matrix has an eigenvalue with non-negative real part; no steady state.
struct UnstableDrift : Error {
    using Error::Error;
};

// The vectorized Lyapunov system is numerically rank-deficient.
struct SingularSystem : Error {
    using Error::Error;
};

// Adaptive integrator cannot meet its local error target.
struct StepFailure : Error {
    using Error::Error;
};

// Iterative eigen-solver failed to converge.
struct ConvergenceFailure : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

// Covariance block is singular or unphysical where an inverse is required.
struct SingularCovariance : Error {
    using Error::Error;
};

// Argument outside the mathematical domain of a closed-form expression.
struct DomainError : Error {
    using Error::Error;
};

// Bad configuration file or parameter set (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

// Filesystem failure while writing results (CLI exit code 3).
struct IoError : Error {
    using Error::Error;
};

} // namespace optomech
