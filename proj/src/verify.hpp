#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "constants.hpp"
#include "profile.hpp"
#include "rearrange.hpp"

// End-to-end verification of the weighted Sobolev, Hardy and Hardy-Sobolev
// inequalities for compactly supported radial piecewise-linear test
// functions on model geometries, plus sharpness probes.

namespace isoc::verify {

struct RadialTestFunction {
    rearrange::PiecewiseLinear phi;  // nonnegative, phi(R_max) = 0
    std::string name;
};

// Precomputed constants for one (profile, geometry, p) configuration.
struct VerifyContext {
    const profile::IsoperimetricProfile* prof;
    const profile::ModelGeometry* g;
    double p;
    double C1;
    double C2;
    double rel_tol;
};

VerifyContext make_context(const profile::IsoperimetricProfile& prof,
                           const profile::ModelGeometry& g, double p, double rel_tol = 1e-6);

// int |phi'|^p A(r) dr, exact per cell through V.
double dirichlet_energy(const VerifyContext& ctx, const rearrange::PiecewiseLinear& phi);

struct VerifyResult {
    double lhs;
    double rhs;
    double ratio;  // quotient compared against the constant (C1, C2, ...)
    bool pass;
};

// ( int phi^p* w(V(r))^-p* A dr )^(1/p*)  <=  C1 ( int |phi'|^p A dr )^(1/p).
VerifyResult verify_sobolev(const VerifyContext& ctx, const rearrange::PiecewiseLinear& phi);

// int (phi/r)^p A dr  <=  C2 int |phi'|^p A dr.
VerifyResult verify_hardy(const VerifyContext& ctx, const rearrange::PiecewiseLinear& phi);

// int phi^(p*(q)) r^-q w^-(p*(q)-q) A dr
//   <=  hardy_sobolev_constant * ( int |phi'|^p A dr )^((N-q)/(N-p)).
VerifyResult verify_hardy_sobolev(const VerifyContext& ctx, double q,
                                  const rearrange::PiecewiseLinear& phi);

enum class Family { tent, bump, talenti, power_cutoff, random_monotone, random_nonmonotone };

Family family_from_name(const std::string& name);
const char* family_name(Family f);

// Deterministic family members; seeded RNG only for the random families.
std::vector<RadialTestFunction> make_family(Family family, int budget, std::uint64_t seed,
                                            int N, double p);

// The Hardy sharpness probe: phi = r^(-(N-p)/p + delta) with logarithmic
// ramps; support and ramps are tied to delta so the quotient increases
// toward C2 as delta decreases.
RadialTestFunction hardy_probe(int N, double p, double delta);

struct SweepRow {
    std::string function;
    double lhs, rhs, ratio;
    bool pass;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    double max_quotient = 0.0;
    std::string argmax;
    bool all_pass = true;
};

SweepReport sobolev_quotient_sweep(const VerifyContext& ctx, Family family, int budget,
                                   std::uint64_t seed);

enum class Inequality { sobolev, hardy, hardy_sobolev };

Inequality inequality_from_name(const std::string& name);

SweepReport verify_sweep(const VerifyContext& ctx, Inequality which, double q, Family family,
                         int budget, std::uint64_t seed);

}  // namespace isoc::verify
