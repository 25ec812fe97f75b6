#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcpot {

/// Base class for all library failures.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input row; `row` is the zero-based data-row index.
struct ParseError : Error {
    std::size_t row;
    ParseError(const std::string& msg, std::size_t row_)
        : Error(msg + " (row " + std::to_string(row_) + ")"), row(row_) {}
};

/// Evaluation of a tail quantity below the model threshold u.
struct BelowThreshold : Error {
    using Error::Error;
};

/// Sample too small or degenerate for the requested fit.
struct InsufficientData : Error {
    using Error::Error;
};

/// PWM system b0 = 2*b1 has no solution.
struct DegenerateMoments : Error {
    using Error::Error;
};

/// Dependence parameters outside their validity domain; `constraint` names
/// the first violated inequality.
struct ConstraintViolation : Error {
    std::string constraint;
    explicit ConstraintViolation(const std::string& which)
        : Error("dependence constraint violated: " + which), constraint(which) {}
};

/// V1*V2 - V12 <= 0: the bivariate density is not positive at this point.
struct NonPositiveDensity : Error {
    using Error::Error;
};

/// F(y) reached 1 numerically (observation beyond the xi<0 support end).
struct SupportExceeded : Error {
    using Error::Error;
};

/// Fewer than 2 exceedances: inter-exceedance times are undefined.
struct InsufficientExceedances : Error {
    using Error::Error;
};

/// Requested return level falls at or below the threshold.
struct QuantileBelowThreshold : Error {
    using Error::Error;
};

/// Root bracketing failed during inversion sampling.
struct BracketFailure : Error {
    using Error::Error;
};

/// Optimizer did not converge; carries the best point found.
struct ConvergenceFailure : Error {
    std::vector<double> best_point;
    double best_value;
    double gradient_norm;
    ConvergenceFailure(const std::string& msg, std::vector<double> best, double value,
                       double grad_norm)
        : Error(msg), best_point(std::move(best)), best_value(value), gradient_norm(grad_norm) {}
};

}  // namespace mcpot
