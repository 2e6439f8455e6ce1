#pragma once

#include "common.hpp"

// Special functions and the closed-form constants built from them:
// Gamma, Beta, unit-ball volume, the Bliss factor k_{q,p} and the
// best Euclidean Sobolev constant S(N,p).

namespace isoc::specfn {

// Euler Gamma on (0, 171.62); relative accuracy a few ulp.
double gamma(double x);

// log Gamma on (0, inf).
double log_gamma(double x);

// Beta(a,b) = Gamma(a)Gamma(b)/Gamma(a+b), evaluated in log space so
// large arguments (k_{q,p} with q near p) do not overflow.
double beta(double a, double b);
double log_beta(double a, double b);

// Volume of the unit ball in R^N.
double unit_ball_volume(int N);

// Parameters (N, p) and optional q shared by the constants below.
struct DimensionParams {
    int N;
    double p;

    DimensionParams(int N_, double p_) : N(N_), p(p_) {
        require(N >= 2, "dimension N must be >= 2");
        require(p > 1.0 && p < static_cast<double>(N), "exponent p must satisfy 1 < p < N");
    }
    double pstar() const { return static_cast<double>(N) * p / (N - p); }
    // Critical exponent of the Hardy-Sobolev interpolation, q < p.
    double pstar_of(double q) const { return p * (N - q) / (N - p); }
};

// Bliss constant for 1 < p <= q.  k_{p,p} = p/(p-1)^((p-1)/p); for q > p
// k_{q,p} = (r / Beta(1/r, (q-1)/r))^(1/p - 1/q) with r = q/p - 1.
// Arguments with q - p < 1e-8 fall back to the q = p closed form: the
// Beta form is numerically indeterminate as r -> 0.
double k_qp(double q, double p);

// Gamma-function form of k_{p*,p}; must agree with k_qp(pstar, p).
double k_pstar_p(int N, double p);

// Best constant in the Euclidean Sobolev inequality.
double sobolev_best_constant(int N, double p);

}  // namespace isoc::specfn
