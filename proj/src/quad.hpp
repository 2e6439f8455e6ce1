#pragma once

#include <functional>
#include <optional>
#include <string>

#include "common.hpp"

// Deterministic adaptive quadrature on finite intervals, improper integrals
// with declared power tails / endpoint singularities, and a supremum scanner
// over (0, inf).

namespace isoc::quad {

struct IntegralSpec {
    std::function<double(double)> integrand;
    double lower = 0.0;
    double upper = kInf;
    // integrand ~ c * (t - lower)^sigma as t -> lower; must be > -1.
    double singularity_exponent = 0.0;
    // integrand ~ c * t^-tau as t -> inf; tau > 1 required when upper = inf.
    // kInf means super-polynomial decay (e.g. exponential).
    double tail_exponent = kInf;
    double rel_tol = 1e-10;
};

struct IntegralResult {
    double value;
    double error_estimate;
};

IntegralResult integrate(const IntegralSpec& spec);

enum class Attainment { interior, limit_at_zero, limit_at_infinity };

const char* attainment_name(Attainment a);

struct SupremumResult {
    double location;   // 0.0 / inf for boundary-attained suprema
    double value;
    Attainment attained;
    int grid_size;
    int refine_iterations;
};

struct ScanOptions {
    double lo = 1e-8;
    double hi = 1e8;
    int points_per_decade = 25;
    double rel_tol = 1e-8;
    // Declared limits of the objective at the boundaries; used verbatim when
    // the scan detects attainment there.
    std::optional<double> limit_at_zero;
    std::optional<double> limit_at_infinity;
    int max_extension_decades = 120;
};

// Scans a log-uniform grid, golden-section refines an interior maximum, and
// extrapolates (Aitken on decade samples) when the supremum is approached
// only at a boundary.  Ties between equal maxima resolve to the smallest s.
SupremumResult sup_scan(const std::function<double(double)>& objective,
                        const ScanOptions& options = {});

// Density on (0, inf) with declared endpoint behaviour, supporting
// cumulative mass queries.
struct WeightedMeasure {
    std::function<double(double)> density;
    double singularity_exponent = 0.0;  // density ~ c * t^sigma, t -> 0
    double tail_exponent = kInf;        // density ~ c * t^-tau, t -> inf
    std::string name;
};

// nu([x, inf)).  Divergent tails (tail_exponent <= 1) raise DivergenceError.
double cumulative_tail(const WeightedMeasure& m, double x, double rel_tol = 1e-10);

// nu([0, x]).
double cumulative_mass(const WeightedMeasure& m, double x, double rel_tol = 1e-10);

}  // namespace isoc::quad
