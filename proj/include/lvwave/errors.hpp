#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lvwave {

/// Input outside the admissible set (bad parameters, mismatched grids, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested wave speed lies below the minimal admissible speed.
class SubcriticalSpeedError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A numerical procedure failed (divergence, non-finite values, stalled iteration).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Newton iteration failed; carries the residual history of the attempt.
class NewtonError : public NumericalError {
public:
    NewtonError(const std::string& what, std::vector<double> residuals)
        : NumericalError(what), residual_history(std::move(residuals)) {}

    std::vector<double> residual_history;
};

}  // namespace lvwave
