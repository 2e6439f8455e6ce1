#include "profile.hpp"

#include <algorithm>
#include <cmath>

#include "quad.hpp"
#include "specfn.hpp"

namespace isoc::profile {

double weight_w(const IsoperimetricProfile& prof, double s) {
    require(s > 0.0, "weight_w: argument must be positive");
    const double n = static_cast<double>(prof.N);
    return prof.C_N * std::pow(s, (n - 1.0) / n) / prof.h(s);
}

std::vector<double> log_grid(double lo, double hi, int points) {
    require(lo > 0.0 && hi > lo && points >= 2, "log_grid: invalid parameters");
    std::vector<double> g(points);
    const double e0 = std::log10(lo), e1 = std::log10(hi);
    for (int i = 0; i < points; ++i)
        g[i] = std::pow(10.0, e0 + (e1 - e0) * i / (points - 1));
    return g;
}

ValidityReport check_valid(const IsoperimetricProfile& prof, const std::vector<double>& grid) {
    ValidityReport rep;
    require(grid.size() >= 2, "check_valid: grid needs at least two points");
    constexpr double tol = 1e-12;
    double s_prev = grid.front();
    require(s_prev > 0.0, "check_valid: grid entries must be positive");
    double h_prev = prof.h(s_prev);
    double w_prev = weight_w(prof, s_prev);
    for (size_t i = 1; i < grid.size(); ++i) {
        const double s = grid[i];
        require(s > s_prev, "check_valid: grid must be strictly increasing");
        const double hv = prof.h(s);
        const double wv = weight_w(prof, s);
        if (hv < h_prev * (1.0 - tol))
            rep.issues.push_back({s_prev, s, "h decreases"});
        if (wv < w_prev * (1.0 - tol))
            rep.issues.push_back({s_prev, s, "w decreases"});
        s_prev = s;
        h_prev = hv;
        w_prev = wv;
    }
    rep.pass = rep.issues.empty();
    return rep;
}

HyperbolicityResult is_p_hyperbolic(const IsoperimetricProfile& prof, double p,
                                    double rel_tol) {
    require(p > 1.0, "is_p_hyperbolic: requires p > 1");
    const double pp = p / (p - 1.0);
    const double tau = prof.exponent_at_infinity * pp;
    // Guard against rounding at rational thresholds like p = k.
    if (tau <= 1.0 + 1e-12 * std::max(1.0, tau)) {
        return {false, kInf};
    }
    quad::IntegralSpec spec;
    spec.integrand = [&prof, pp](double t) { return std::pow(prof.h(t), -pp); };
    spec.lower = 1.0;
    spec.upper = kInf;
    spec.tail_exponent = tau;
    spec.rel_tol = rel_tol;
    return {true, quad::integrate(spec).value};
}

std::optional<double> alpha_exponent(const IsoperimetricProfile& prof, int N, double p,
                                     const std::vector<double>& grid) {
    require(grid.size() >= 2, "alpha_exponent: grid needs at least two points");
    require(N >= 2 && p > 1.0 && p < static_cast<double>(N),
            "alpha_exponent: requires 1 < p < N");
    // t^alpha/h nonincreasing over a pair <=> alpha <= log-slope of h there.
    double alpha = kInf;
    for (size_t i = 1; i < grid.size(); ++i) {
        const double slope = std::log(prof.h(grid[i]) / prof.h(grid[i - 1])) /
                             std::log(grid[i] / grid[i - 1]);
        alpha = std::min(alpha, slope);
    }
    const double lo = (p - 1.0) / p;
    const double hi = (static_cast<double>(N) - 1.0) / N;
    const double slack = 1e-9;
    if (alpha <= lo + slack || alpha > hi + slack) return std::nullopt;
    return std::min(alpha, hi);
}

namespace {

// Shared backbone for the min-of-two-powers families.
IsoperimetricProfile min_power_profile(int N, double lambda, double mu, double a, double b,
                                       double C_N, std::string name) {
    require(N >= 2, "profile: dimension must be >= 2");
    require(a > 0.0 && b > 0.0, "profile: coefficients must be positive");
    require(lambda >= mu && mu > 0.0, "profile: requires lambda >= mu > 0");
    require(C_N > 0.0, "profile: C_N must be positive");
    IsoperimetricProfile prof;
    prof.h = [a, b, lambda, mu](double s) {
        return std::min(a * std::pow(s, lambda), b * std::pow(s, mu));
    };
    prof.N = N;
    prof.C_N = C_N;
    prof.exponent_at_zero = lambda;
    prof.coeff_at_zero = a;
    prof.exponent_at_infinity = mu;
    prof.coeff_at_infinity = b;
    if (lambda == mu) {
        prof.coeff_at_zero = prof.coeff_at_infinity = std::min(a, b);
    }
    prof.name = std::move(name);
    return prof;
}

}  // namespace

IsoperimetricProfile euclidean_profile(int N) {
    require(N >= 2, "euclidean_profile: N must be >= 2");
    const double n = static_cast<double>(N);
    const double cn = n * std::pow(specfn::unit_ball_volume(N), 1.0 / n);
    return min_power_profile(N, (n - 1.0) / n, (n - 1.0) / n, cn, cn, cn,
                             "euclidean(N=" + std::to_string(N) + ")");
}

IsoperimetricProfile product_profile(int m, int k, double a, double b,
                                     std::optional<double> C_N_override) {
    require(m >= 1 && k >= 1, "product_profile: factor dimensions must be >= 1");
    const int N = m + k;
    const double lambda = (N - 1.0) / N;
    const double mu = (k - 1.0) / k;
    require(mu > 0.0, "product_profile: k must be >= 2");
    return min_power_profile(N, lambda, mu, a, b, C_N_override.value_or(a),
                             "product(m=" + std::to_string(m) + ",k=" + std::to_string(k) +
                                 ")");
}

IsoperimetricProfile paraboloid_profile(int N, double beta, double a, double b,
                                        std::optional<double> C_N_override) {
    require(beta > 0.0 && beta < 1.0, "paraboloid_profile: beta must lie in (0,1)");
    const double n = static_cast<double>(N);
    const double lambda = (n - 1.0) / n;
    const double mu = beta * (n - 1.0) / (1.0 + beta * (n - 1.0));
    return min_power_profile(N, lambda, mu, a, b, C_N_override.value_or(a),
                             "paraboloid(N=" + std::to_string(N) + ")");
}

IsoperimetricProfile bounded_geometry_profile(int N, double nu, double theta, double v0) {
    require(nu > 1.0 && nu <= static_cast<double>(N),
            "bounded_geometry_profile: nu must lie in (1, N]");
    require(theta > 0.0 && v0 > 0.0, "bounded_geometry_profile: theta, v0 must be positive");
    const double n = static_cast<double>(N);
    const double lambda = 1.0 - 1.0 / n;
    const double mu = 1.0 - 1.0 / nu;
    // Scale the large-volume branch so the two branches cross at v0.
    const double b = theta * std::pow(v0, 1.0 / nu - 1.0 / n);
    return min_power_profile(N, lambda, mu, theta, b, theta,
                             "bounded_geometry(N=" + std::to_string(N) + ")");
}

IsoperimetricProfile power_log_profile(int N, double gamma_coeff, double k, double z,
                                       std::optional<double> C_N_override) {
    require(N >= 2, "power_log_profile: N must be >= 2");
    require(gamma_coeff > 0.0 && k > 0.0, "power_log_profile: requires gamma, k > 0");
    IsoperimetricProfile prof;
    prof.h = [gamma_coeff, k, z](double s) {
        return gamma_coeff * std::pow(s, k) * std::pow(std::log(M_E + s), z);
    };
    prof.N = N;
    prof.C_N = C_N_override.value_or(gamma_coeff);
    prof.exponent_at_zero = k;
    prof.coeff_at_zero = gamma_coeff;
    prof.exponent_at_infinity = k;  // log factor is sub-polynomial
    prof.coeff_at_infinity = gamma_coeff;
    prof.name = "power_log(k=" + std::to_string(k) + ",z=" + std::to_string(z) + ")";
    return prof;
}

ModelGeometry euclidean_geometry(int N) {
    require(N >= 2, "euclidean_geometry: N must be >= 2");
    const double n = static_cast<double>(N);
    const double om = specfn::unit_ball_volume(N);
    ModelGeometry g;
    g.V = [om, n](double r) { return om * std::pow(r, n); };
    g.A = [om, n](double r) { return n * om * std::pow(r, n - 1.0); };
    g.V_inverse = [om, n](double v) { return std::pow(v / om, 1.0 / n); };
    g.N = N;
    g.dim_at_infinity = n;
    g.tail_coeff = om;
    g.name = "euclidean(N=" + std::to_string(N) + ")";
    return g;
}

namespace {

// Cubic Hermite on [x1, x2] with values y1, y2 and end slopes d1, d2.
struct Hermite {
    double x1, x2, y1, y2, d1, d2;

    double operator()(double x) const {
        const double w = x2 - x1;
        const double t = (x - x1) / w;
        const double t2 = t * t, t3 = t2 * t;
        return y1 * (2 * t3 - 3 * t2 + 1) + w * d1 * (t3 - 2 * t2 + t) +
               y2 * (-2 * t3 + 3 * t2) + w * d2 * (t3 - t2);
    }
    double deriv(double x) const {
        const double w = x2 - x1;
        const double t = (x - x1) / w;
        const double t2 = t * t;
        return (y1 * (6 * t2 - 6 * t) / w + d1 * (3 * t2 - 4 * t + 1) +
                y2 * (-6 * t2 + 6 * t) / w + d2 * (3 * t2 - 2 * t));
    }
    double min_deriv() const {
        double m = std::min(deriv(x1), deriv(x2));
        for (int i = 1; i < 64; ++i) m = std::min(m, deriv(x1 + (x2 - x1) * i / 64.0));
        return m;
    }
};

}  // namespace

ModelGeometry product_model_geometry(int m, int k, double cross_volume,
                                     double match_half_decades) {
    require(m >= 1 && k >= 2, "product_model_geometry: requires m >= 1, k >= 2");
    require(cross_volume > 0.0, "product_model_geometry: cross_volume must be positive");
    require(match_half_decades > 0.0 && match_half_decades <= 3.0,
            "product_model_geometry: match window must lie in (0, 3] decades");
    const int N = m + k;
    const double n = static_cast<double>(N);
    const double kk = static_cast<double>(k);
    const double om_n = specfn::unit_ball_volume(N);
    const double ck = specfn::unit_ball_volume(k) * cross_volume;  // large-r V coefficient

    // log V as a function of log r: two lines joined by a C^1 cubic.
    const double xstar = (std::log(ck) - std::log(om_n)) / (n - kk);
    const double d = match_half_decades * std::log(10.0);
    Hermite blend{xstar - d,
                  xstar + d,
                  std::log(om_n) + n * (xstar - d),
                  std::log(ck) + kk * (xstar + d),
                  n,
                  kk};
    if (blend.min_deriv() <= 0.0)
        throw DomainError("product_model_geometry: interpolated volume is not monotone; "
                          "widen the matching window");

    auto logV = [blend, om_n, ck, n, kk](double x) {
        if (x <= blend.x1) return std::log(om_n) + n * x;
        if (x >= blend.x2) return std::log(ck) + kk * x;
        return blend(x);
    };
    auto dlogV = [blend, n, kk](double x) {
        if (x <= blend.x1) return n;
        if (x >= blend.x2) return kk;
        return blend.deriv(x);
    };

    ModelGeometry g;
    g.V = [logV](double r) {
        require(r > 0.0, "geometry: radius must be positive");
        return std::exp(logV(std::log(r)));
    };
    g.A = [logV, dlogV](double r) {
        require(r > 0.0, "geometry: radius must be positive");
        const double x = std::log(r);
        return std::exp(logV(x)) / r * dlogV(x);
    };
    g.V_inverse = [blend, om_n, ck, n, kk, logV](double v) {
        require(v > 0.0, "geometry: volume must be positive");
        const double y = std::log(v);
        const double y1 = std::log(om_n) + n * blend.x1;
        const double y2 = std::log(ck) + kk * blend.x2;
        if (y <= y1) return std::exp((y - std::log(om_n)) / n);
        if (y >= y2) return std::exp((y - std::log(ck)) / kk);
        double xa = blend.x1, xb = blend.x2;
        for (int i = 0; i < 80 && xb - xa > 1e-16 * std::max(1.0, std::abs(xa)); ++i) {
            const double xm = 0.5 * (xa + xb);
            (logV(xm) < y ? xa : xb) = xm;
        }
        return std::exp(0.5 * (xa + xb));
    };
    g.N = N;
    g.dim_at_infinity = kk;
    g.tail_coeff = ck;
    g.name = "product_model(m=" + std::to_string(m) + ",k=" + std::to_string(k) + ")";
    return g;
}

IsoperimetricProfile profile_from_geometry(const ModelGeometry& g) {
    const double n = static_cast<double>(g.N);
    const double om_n = specfn::unit_ball_volume(g.N);
    IsoperimetricProfile prof;
    prof.h = [A = g.A, Vinv = g.V_inverse](double v) { return A(Vinv(v)); };
    prof.N = g.N;
    prof.C_N = n * std::pow(om_n, 1.0 / n);
    prof.exponent_at_zero = (n - 1.0) / n;
    prof.coeff_at_zero = prof.C_N;
    const double kk = g.dim_at_infinity;
    prof.exponent_at_infinity = (kk - 1.0) / kk;
    prof.coeff_at_infinity = kk * std::pow(g.tail_coeff, 1.0 / kk);
    prof.name = "induced(" + g.name + ")";
    return prof;
}

double max_rel_profile_gap(const IsoperimetricProfile& prof, const ModelGeometry& g,
                           const std::vector<double>& grid) {
    double gap = 0.0;
    for (double s : grid) {
        const double hp = prof.h(s);
        const double hg = g.A(g.V_inverse(s));
        gap = std::max(gap, std::abs(hp - hg) / std::max(hp, hg));
    }
    return gap;
}

}  // namespace isoc::profile
