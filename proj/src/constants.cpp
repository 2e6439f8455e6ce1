#include "constants.hpp"

#include <cmath>

#include "specfn.hpp"

namespace isoc::constants {

namespace {

void check_dims(int N, double p) {
    require(N >= 2, "constants: dimension N must be >= 2");
    require(p > 1.0 && p < static_cast<double>(N), "constants: requires 1 < p < N");
}

// Tail factor shared by B1 and B2: ( int_s^inf h^{-p/(p-1)} )^{(p-1)/p}.
struct TailFactor {
    const profile::IsoperimetricProfile& prof;
    double p;
    double rel_tol;

    double operator()(double s) const {
        const double pp = p / (p - 1.0);
        quad::IntegralSpec spec;
        spec.integrand = [this, pp](double t) { return std::pow(prof.h(t), -pp); };
        spec.lower = s;
        spec.upper = kInf;
        spec.tail_exponent = prof.exponent_at_infinity * pp;
        spec.rel_tol = rel_tol;
        return std::pow(quad::integrate(spec).value, 1.0 / pp);
    }
};

}  // namespace

BResult compute_B1(const profile::IsoperimetricProfile& prof, double p, double rel_tol) {
    check_dims(prof.N, p);
    require(rel_tol > 0.0, "compute_B1: rel_tol must be positive");
    if (!profile::is_p_hyperbolic(prof, p).hyperbolic)
        throw DivergenceError("compute_B1: profile is not p-hyperbolic, tail integral diverges");

    const double n = static_cast<double>(prof.N);
    const double lambda = (n - 1.0) / n;
    const double pstar = n * p / (n - p);
    const double sigma_inner = (prof.exponent_at_zero - lambda) * pstar;
    if (sigma_inner <= -1.0)
        throw DivergenceError("compute_B1: inner integrand is not integrable at 0 "
                              "(exponent at zero too small)");

    const double inner_tol = rel_tol / 10.0;
    const double C_N = prof.C_N;
    TailFactor tail{prof, p, inner_tol};
    auto objective = [&](double s) {
        quad::IntegralSpec spec;
        spec.integrand = [&](double t) {
            return std::pow(prof.h(t) / (C_N * std::pow(t, lambda)), pstar);
        };
        spec.lower = 0.0;
        spec.upper = s;
        spec.singularity_exponent = sigma_inner;
        spec.rel_tol = inner_tol;
        const double J1 = quad::integrate(spec).value;
        return std::pow(J1, 1.0 / pstar) * tail(s);
    };

    quad::ScanOptions opts;
    opts.rel_tol = rel_tol;
    quad::SupremumResult sup = quad::sup_scan(objective, opts);
    return {sup.value, sup};
}

BResult compute_B2(const profile::IsoperimetricProfile& prof, const profile::ModelGeometry& g,
                   double p, double rel_tol, double* consistency_gap) {
    check_dims(prof.N, p);
    require(g.N == prof.N, "compute_B2: profile and geometry dimensions differ");
    require(rel_tol > 0.0, "compute_B2: rel_tol must be positive");
    if (!profile::is_p_hyperbolic(prof, p).hyperbolic)
        throw DivergenceError("compute_B2: profile is not p-hyperbolic, tail integral diverges");

    const double n = static_cast<double>(prof.N);
    const double sigma_head = -p / n;  // V_inverse(tau)^-p ~ (tau/omega)^(-p/N) near 0
    if (sigma_head <= -1.0)
        throw DivergenceError("compute_B2: V_inverse(tau)^-p is not integrable at 0");

    if (consistency_gap) {
        *consistency_gap = profile::max_rel_profile_gap(prof, g, profile::log_grid(1e-6, 1e6, 121));
    }

    const double inner_tol = rel_tol / 10.0;
    TailFactor tail{prof, p, inner_tol};
    auto objective = [&](double s) {
        quad::IntegralSpec spec;
        spec.integrand = [&](double t) { return std::pow(g.V_inverse(t), -p); };
        spec.lower = 0.0;
        spec.upper = s;
        spec.singularity_exponent = sigma_head;
        spec.rel_tol = inner_tol;
        const double J = quad::integrate(spec).value;
        return std::pow(J, 1.0 / p) * tail(s);
    };

    quad::ScanOptions opts;
    opts.rel_tol = rel_tol;
    quad::SupremumResult sup = quad::sup_scan(objective, opts);
    return {sup.value, sup};
}

std::pair<double, double> theorem_constants(double B1, double B2, int N, double p) {
    check_dims(N, p);
    require(std::isfinite(B1) && std::isfinite(B2), "theorem_constants: B1, B2 must be finite");
    const double pstar = static_cast<double>(N) * p / (N - p);
    const double C1 = B1 * specfn::k_qp(pstar, p);
    const double C2 = std::pow(B2, p) * std::pow(p, p) / std::pow(p - 1.0, p - 1.0);
    return {C1, C2};
}

double hardy_sobolev_constant(double C1, double C2, int N, double p, double q) {
    check_dims(N, p);
    require(q < p, "hardy_sobolev_constant: requires q < p");
    require(C1 >= 0.0 && C2 >= 0.0, "hardy_sobolev_constant: constants must be nonnegative");
    const double n = static_cast<double>(N);
    return std::pow(C1, n * (p - q) / (n - p)) * std::pow(C2, q / p);
}

double b1_bound_power_like(int N, double p, double alpha, double C_N) {
    check_dims(N, p);
    require(C_N > 0.0, "b1_bound_power_like: C_N must be positive");
    const double n = static_cast<double>(N);
    require(alpha > (p - 1.0) / p && alpha <= (n - 1.0) / n + 1e-12,
            "b1_bound_power_like: alpha outside ((p-1)/p, (N-1)/N]");
    const double pstar = n * p / (n - p);
    return std::pow((n - p) / n, 1.0 / pstar) * std::pow(p - 1.0, (p - 1.0) / p) /
           (C_N * std::pow(alpha * p - p + 1.0, (n - 1.0) / n));
}

double c2_bound_general(double p, double alpha, double c0, double c1) {
    require(p > 1.0, "c2_bound_general: requires p > 1");
    require(alpha > (p - 1.0) / p && alpha <= 1.0, "c2_bound_general: alpha out of range");
    require(c0 > 0.0 && c1 > 0.0, "c2_bound_general: constants must be positive");
    return std::pow(p * std::max(c1, 1.0 / c0) / (alpha * p - p + 1.0), p);
}

double product_b_coefficient(int k, double cross_volume) {
    require(k >= 1, "product_b_coefficient: k must be >= 1");
    require(cross_volume > 0.0, "product_b_coefficient: cross_volume must be positive");
    const double kk = static_cast<double>(k);
    return kk * std::pow(specfn::unit_ball_volume(k) * cross_volume, 1.0 / kk);
}

ConstantsReport compute_constants(const profile::IsoperimetricProfile& prof,
                                  const profile::ModelGeometry* g, double p,
                                  std::optional<double> q, double rel_tol) {
    check_dims(prof.N, p);
    if (q) require(*q < p, "compute_constants: Hardy-Sobolev exponent requires q < p");

    ConstantsReport rep;
    rep.profile_name = prof.name;
    rep.N = prof.N;
    rep.p = p;
    rep.q = q;
    rep.rel_tol = rel_tol;
    const double pstar = static_cast<double>(prof.N) * p / (prof.N - p);
    rep.k_pstar_p = specfn::k_qp(pstar, p);

    auto hyp = profile::is_p_hyperbolic(prof, p);
    rep.hyperbolic = hyp.hyperbolic;
    rep.hyperbolicity_integral = hyp.integral;
    if (!hyp.hyperbolic) return rep;

    BResult b1 = compute_B1(prof, p, rel_tol);
    rep.B1 = b1.value;
    rep.B1_where = b1.where;
    rep.C1 = b1.value * rep.k_pstar_p;

    if (g) {
        double gap = 0.0;
        BResult b2 = compute_B2(prof, *g, p, rel_tol, &gap);
        rep.B2 = b2.value;
        rep.B2_where = b2.where;
        rep.geometry_consistency_gap = gap;
        auto [C1, C2] = theorem_constants(b1.value, b2.value, prof.N, p);
        rep.C1 = C1;
        rep.C2 = C2;
        if (q) rep.hardy_sobolev = hardy_sobolev_constant(C1, C2, prof.N, p, *q);
    }
    return rep;
}

}  // namespace isoc::constants
