#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace isoc {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Invalid argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A requested quantity is infinite (divergent integral, non-hyperbolic
// profile, unbounded supremum).
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive refinement stopped before reaching the requested tolerance.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double partial, double err)
        : std::runtime_error(what), partial_value(partial), error_estimate(err) {}
    double partial_value;
    double error_estimate;
};

// An objective or integrand returned NaN/inf at an interior point.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw DomainError(msg);
}

inline bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace isoc
