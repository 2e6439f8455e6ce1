#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

// Isoperimetric profiles h(s), their weight w(s) = C_N s^((N-1)/N) / h(s),
// preset families, validity diagnostics, the p-hyperbolicity test, and
// spherically symmetric model geometries V(r).

namespace isoc::profile {

struct IsoperimetricProfile {
    std::function<double(double)> h;  // s > 0 -> h(s) > 0, increasing, h(0+) = 0
    int N = 0;                        // topological dimension
    double C_N = 1.0;                 // normalization constant in w
    double exponent_at_zero = 0.0;    // h ~ coeff_at_zero * s^exponent_at_zero, s -> 0
    double exponent_at_infinity = 0.0;
    double coeff_at_zero = 1.0;
    double coeff_at_infinity = 1.0;   // asymptotic power coefficient (tail families)
    std::string name;

    double operator()(double s) const {
        require(s > 0.0, "profile: argument must be positive");
        return h(s);
    }
};

// w(s) = C_N s^((N-1)/N) / h(s).
double weight_w(const IsoperimetricProfile& prof, double s);

std::vector<double> log_grid(double lo, double hi, int points);

struct ValidityIssue {
    double s_lo, s_hi;
    std::string what;
};

struct ValidityReport {
    bool pass = true;
    std::vector<ValidityIssue> issues;
};

// Grid check of Definition-level requirements: h increasing and w
// nondecreasing, to 1e-12 relative on adjacent pairs.
ValidityReport check_valid(const IsoperimetricProfile& prof, const std::vector<double>& grid);

struct HyperbolicityResult {
    bool hyperbolic;
    double integral;  // int_1^inf h(t)^(-p/(p-1)) dt; +inf when divergent
};

// Dini condition: the tail exponent lambda_inf * p/(p-1) must exceed 1.
HyperbolicityResult is_p_hyperbolic(const IsoperimetricProfile& prof, double p,
                                    double rel_tol = 1e-10);

// Largest alpha in ((p-1)/p, (N-1)/N] such that t^alpha / h(t) is
// nonincreasing across the grid; empty when the critical exponent of h
// falls outside that range.
std::optional<double> alpha_exponent(const IsoperimetricProfile& prof, int N, double p,
                                     const std::vector<double>& grid);

// --- preset families ---------------------------------------------------

// h(s) = N omega_N^(1/N) s^((N-1)/N), C_N equal to the same constant, so
// w == 1 identically.
IsoperimetricProfile euclidean_profile(int N);

// h(s) = min(a s^((N-1)/N), b s^((k-1)/k)) with N = m + k; C_N = a unless
// overridden.
IsoperimetricProfile product_profile(int m, int k, double a, double b,
                                     std::optional<double> C_N_override = {});

// Paraboloid-like region: exponents (N-1)/N and beta(N-1)/(1+beta(N-1)),
// beta in (0,1).
IsoperimetricProfile paraboloid_profile(int N, double beta, double a = 1.0, double b = 1.0,
                                        std::optional<double> C_N_override = {});

// Two-branch bound with exponents 1-1/N (below v0) and 1-1/nu (above),
// continuous crossover at v0; C_N = theta.
IsoperimetricProfile bounded_geometry_profile(int N, double nu, double theta, double v0);

// h(s) = gamma s^k ln(e+s)^z.
IsoperimetricProfile power_log_profile(int N, double gamma_coeff, double k, double z,
                                       std::optional<double> C_N_override = {});

// --- model geometries ---------------------------------------------------

struct ModelGeometry {
    std::function<double(double)> V;          // volume of the ball of radius r
    std::function<double(double)> A;          // boundary area, A = V'
    std::function<double(double)> V_inverse;
    int N = 0;
    double dim_at_infinity = 0.0;             // V ~ tail_coeff * r^dim_at_infinity
    double tail_coeff = 0.0;
    std::string name;
};

ModelGeometry euclidean_geometry(int N);

// V(r) = omega_N r^N at small r, omega_k * cross_volume * r^k at large r,
// joined by a monotone C^1 cubic in log-log coordinates.  The matching
// window is +- match_half_decades around the branch crossing.
ModelGeometry product_model_geometry(int m, int k, double cross_volume,
                                     double match_half_decades = 0.5);

// Induced profile h(v) = A(V_inverse(v)).
IsoperimetricProfile profile_from_geometry(const ModelGeometry& g);

// Largest relative gap between prof.h and the induced profile of g over a
// log grid; used as a consistency advisory for the Hardy constant.
double max_rel_profile_gap(const IsoperimetricProfile& prof, const ModelGeometry& g,
                           const std::vector<double>& grid);

}  // namespace isoc::profile
