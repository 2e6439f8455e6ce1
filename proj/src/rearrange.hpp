#pragma once

#include <gmpxx.h>

#include <vector>

#include "profile.hpp"

// Distribution functions, decreasing rearrangement, and the numerical
// Cavalieri / Hardy-Littlewood / Polya-Szego checks.  Step functions with
// rational data follow an exact-arithmetic path; radial piecewise-linear
// functions are rearranged through dense level-set sampling.

namespace isoc::rearrange {

using Rational = mpq_class;

// Step function under Lebesgue measure: values[i] on [edges[i], edges[i+1]).
struct StepFunction {
    std::vector<Rational> edges;   // strictly increasing, size values.size() + 1
    std::vector<Rational> values;

    Rational total_width() const;
};

StepFunction make_step(std::vector<Rational> edges, std::vector<Rational> values);

// Convenience: unit cells [0,1), [1,2), ... carrying the given values.
StepFunction make_unit_steps(std::vector<Rational> values);

// nu(t) = |{ |u| > t }|, exact.
Rational distribution_function(const StepFunction& u, const Rational& t);

// Nonincreasing step function on [0, total width), equimeasurable with |u|.
StepFunction decreasing_rearrangement(const StepFunction& u);

struct CavalieriExact {
    Rational lhs, rhs, residual;
};

// int |u|^p  vs  int_0^inf (u*)^p ds, exact for integer p >= 1.
CavalieriExact check_cavalieri(const StepFunction& u, long p);

struct HardyLittlewoodResult {
    Rational lhs, rhs;  // int u v  <=  int u* v*
};

// Requires u and v to live on the same total interval.
HardyLittlewoodResult check_hardy_littlewood(const StepFunction& u, const StepFunction& v);

// --- radial piecewise-linear path ----------------------------------------

struct PiecewiseLinear {
    std::vector<double> x;  // strictly increasing nodes
    std::vector<double> y;  // values at nodes

    double operator()(double t) const;  // linear inside, 0 outside
    double max_value() const;
};

PiecewiseLinear make_piecewise_linear(std::vector<double> x, std::vector<double> y);

// Measure of {phi > t} under the volume element of g (radial coordinate).
double distribution_function_radial(const PiecewiseLinear& phi,
                                    const profile::ModelGeometry& g, double t);

// u*(s) as a piecewise-linear function whose nodes lie on the exact graph:
// `levels` uniform value-space samples plus every node value of phi.
PiecewiseLinear decreasing_rearrangement_radial(const PiecewiseLinear& phi,
                                                const profile::ModelGeometry& g,
                                                int levels = 10000);

struct PairCheck {
    double lhs, rhs;
};

// int |phi|^p dmu  vs  int_0^inf (u*)^p ds (quadrature path).
PairCheck check_cavalieri_radial(const PiecewiseLinear& phi, const profile::ModelGeometry& g,
                                 double p, int levels = 10000);

// lhs = int_0^inf h(s)^p (-du*/ds)^p ds  <=  rhs = int |phi'|^p A(r) dr.
// Cells where u* is constant contribute 0 (a.e.-slope convention).
PairCheck check_polya_szego(const PiecewiseLinear& phi, const profile::ModelGeometry& g,
                            const profile::IsoperimetricProfile& prof, double p,
                            int levels = 10000);

}  // namespace isoc::rearrange
