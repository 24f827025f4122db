#pragma once

#include <stdexcept>
#include <string>

namespace gain {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dimension or shape disagreement between operands.
struct shape_error : error {
    using error::error;
};

// Malformed external input (CSV cell, config key, model file).
struct parse_error : error {
    using error::error;
};

// Structurally valid input that violates a contract (binary column with
// out-of-range value, non-normalized probability table, ...).
struct validation_error : error {
    using error::error;
};

// API misuse: preconditions an operation states for its caller.
struct usage_error : error {
    using error::error;
};

// Training produced a non-finite loss.
struct divergence_error : error {
    using error::error;
};

}  // namespace gain
