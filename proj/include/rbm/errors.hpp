#pragma once

#include <stdexcept>
#include <string>

namespace rbm {

// Bad user input: malformed config, parameters out of range.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical procedure failed to converge or hit a guard
// (projection non-convergence, step too large, solver breakdown, ...).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation at a point where the quantity is singular or undefined
// (coincident kernel arguments, zero offset, infinite area, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace rbm
