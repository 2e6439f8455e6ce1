#pragma once

#include <optional>
#include <string>
#include <utility>

#include "profile.hpp"
#include "quad.hpp"

// The two supremum quantities B1, B2 of the weighted Sobolev/Hardy
// inequalities, the derived constants C1 = B1 k_{p*,p} and
// C2 = B2^p p^p/(p-1)^(p-1), the Hardy-Sobolev constant, and the power-like
// closed-form bounds used for cross-checks.

namespace isoc::constants {

struct BResult {
    double value;
    quad::SupremumResult where;
};

// B1 = sup_{s>0} ( int_0^s [h/(C_N tau^((N-1)/N))]^{p*} dtau )^{1/p*}
//              * ( int_s^inf h^{-p/(p-1)} dtau )^{(p-1)/p}.
// Throws DivergenceError when the profile is not p-hyperbolic or the inner
// integrand is not integrable at 0.
BResult compute_B1(const profile::IsoperimetricProfile& prof, double p, double rel_tol = 1e-8);

// B2 = sup_{s>0} ( int_0^s V_inverse(tau)^{-p} dtau )^{1/p}
//              * ( int_s^inf h^{-p/(p-1)} dtau )^{(p-1)/p}.
// consistency_gap (optional out) reports the largest relative deviation
// between prof and the profile induced by g; a large gap is advisory only.
BResult compute_B2(const profile::IsoperimetricProfile& prof, const profile::ModelGeometry& g,
                   double p, double rel_tol = 1e-8, double* consistency_gap = nullptr);

// C1 = B1 * k_{p*,p};  C2 = B2^p * p^p / (p-1)^(p-1).
std::pair<double, double> theorem_constants(double B1, double B2, int N, double p);

// C1^(N(p-q)/(N-p)) * C2^(q/p), the constant of the Hardy-Sobolev
// interpolation; requires q < p.
double hardy_sobolev_constant(double C1, double C2, int N, double p, double q);

// Closed-form upper bound for B1 valid when t^alpha/h(t) is nonincreasing,
// (p-1)/p < alpha <= (N-1)/N.
double b1_bound_power_like(int N, double p, double alpha, double C_N);

// Upper bound [p max(c1, 1/c0) / (alpha p - p + 1)]^p for C2 under the
// local-Euclidean and large-volume comparability assumptions.
double c2_bound_general(double p, double alpha, double c0, double c1);

// Exact large-volume profile coefficient k (omega_k * cross_volume)^(1/k)
// of a product with a compact factor of measure cross_volume.
double product_b_coefficient(int k, double cross_volume);

struct ConstantsReport {
    std::string profile_name;
    int N = 0;
    double p = 0.0;
    std::optional<double> q;
    bool hyperbolic = false;
    double hyperbolicity_integral = kInf;
    std::optional<double> B1;
    std::optional<quad::SupremumResult> B1_where;
    std::optional<double> B2;
    std::optional<quad::SupremumResult> B2_where;
    std::optional<double> C1;
    std::optional<double> C2;
    std::optional<double> hardy_sobolev;
    double k_pstar_p = 0.0;
    double rel_tol = 0.0;
    std::optional<double> geometry_consistency_gap;
};

// Full pipeline: hyperbolicity, B1, (B2 with a geometry), C1, C2 and the
// Hardy-Sobolev constant when q is given.  A non-hyperbolic profile yields
// a report with hyperbolic = false and no constants.
ConstantsReport compute_constants(const profile::IsoperimetricProfile& prof,
                                  const profile::ModelGeometry* g, double p,
                                  std::optional<double> q, double rel_tol = 1e-8);

}  // namespace isoc::constants
