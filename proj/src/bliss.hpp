#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "profile.hpp"
#include "quad.hpp"

// One-dimensional Bliss-Hardy machinery: the two measure choices that encode
// the Sobolev and Hardy inequalities, the constant
// B~ = sup_x nu([x,inf))^((p-1)/p) mu([0,x])^(1/q), direct evaluation of both
// sides of the inequality for test functions, and the empirical bracket
// B~ <= A <= k_{q,p} B~.

namespace isoc::bliss {

struct MeasurePair {
    quad::WeightedMeasure nu;
    quad::WeightedMeasure mu;
    double p;
    double q;
};

// q = p*, dnu = dy/h(y)^(p/(p-1)), dmu = (h(x)/(C_N x^((N-1)/N)))^(p*) dx.
MeasurePair measures_for_sobolev(const profile::IsoperimetricProfile& prof, double p);

// q = p, dnu as above, dmu = dx / V_inverse(x)^p.
MeasurePair measures_for_hardy(const profile::IsoperimetricProfile& prof,
                               const profile::ModelGeometry& g, double p);

struct BTildeResult {
    double value;
    quad::SupremumResult where;
};

BTildeResult compute_B_tilde(const MeasurePair& m, double rel_tol = 1e-8);

// A nonnegative test function with compact support in (0, inf);
// breakpoints mark kinks or jumps used to split the quadrature.
struct TestFunction {
    std::function<double(double)> f;
    double support_lo = 0.0;
    double support_hi = 0.0;
    std::vector<double> breakpoints;
    std::string name;
};

TestFunction indicator(double x0, double x1);

struct InequalityTest {
    double lhs;    // ( int (int_x^inf f dnu)^q dmu )^(1/q)
    double rhs;    // ( int f^p dnu )^(1/p)
    double ratio;  // lhs / rhs
};

InequalityTest test_inequality(const MeasurePair& m, const TestFunction& f,
                               double rel_tol = 1e-9);

enum class TestFamily { indicators, exponentials, powers, random_steps };

TestFamily family_from_name(const std::string& name);
const char* family_name(TestFamily f);

struct BracketReport {
    double B_tilde = 0.0;
    double observed_sup = 0.0;
    double upper = 0.0;  // k_{q,p} * B_tilde
    std::string best_function;
    int evaluated = 0;
    bool lower_ok = false;  // observed_sup >= 0.99 B~ (indicator families)
    bool upper_ok = false;  // no ratio exceeded upper * (1 + 1e-6)
};

// Sweeps `budget` members of the family and brackets the optimal constant.
BracketReport bracket_optimal_constant(const MeasurePair& m, TestFamily family, int budget,
                                       std::uint64_t seed, double rel_tol = 1e-9);

}  // namespace isoc::bliss
