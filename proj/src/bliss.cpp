#include "bliss.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "specfn.hpp"

namespace isoc::bliss {

MeasurePair measures_for_sobolev(const profile::IsoperimetricProfile& prof, double p) {
    require(p > 1.0 && p < prof.N, "measures_for_sobolev: requires 1 < p < N");
    const double n = static_cast<double>(prof.N);
    const double lambda = (n - 1.0) / n;
    const double pstar = n * p / (n - p);
    const double pp = p / (p - 1.0);

    quad::WeightedMeasure nu;
    nu.density = [h = prof.h, pp](double y) { return std::pow(h(y), -pp); };
    nu.singularity_exponent = -prof.exponent_at_zero * pp;
    nu.tail_exponent = prof.exponent_at_infinity * pp;
    nu.name = "h^(-p/(p-1)) dy";

    quad::WeightedMeasure mu;
    mu.density = [h = prof.h, C = prof.C_N, lambda, pstar](double x) {
        return std::pow(h(x) / (C * std::pow(x, lambda)), pstar);
    };
    mu.singularity_exponent = (prof.exponent_at_zero - lambda) * pstar;
    mu.tail_exponent = (lambda - prof.exponent_at_infinity) * pstar;
    mu.name = "(h/(C_N x^((N-1)/N)))^p* dx";

    return {std::move(nu), std::move(mu), p, pstar};
}

MeasurePair measures_for_hardy(const profile::IsoperimetricProfile& prof,
                               const profile::ModelGeometry& g, double p) {
    require(p > 1.0 && p < prof.N, "measures_for_hardy: requires 1 < p < N");
    require(g.N == prof.N, "measures_for_hardy: profile and geometry dimensions differ");
    const double pp = p / (p - 1.0);

    quad::WeightedMeasure nu;
    nu.density = [h = prof.h, pp](double y) { return std::pow(h(y), -pp); };
    nu.singularity_exponent = -prof.exponent_at_zero * pp;
    nu.tail_exponent = prof.exponent_at_infinity * pp;
    nu.name = "h^(-p/(p-1)) dy";

    quad::WeightedMeasure mu;
    mu.density = [Vinv = g.V_inverse, p](double x) { return std::pow(Vinv(x), -p); };
    mu.singularity_exponent = -p / static_cast<double>(g.N);
    mu.tail_exponent = p / g.dim_at_infinity;
    mu.name = "V_inverse(x)^-p dx";

    return {std::move(nu), std::move(mu), p, p};
}

BTildeResult compute_B_tilde(const MeasurePair& m, double rel_tol) {
    require(rel_tol > 0.0, "compute_B_tilde: rel_tol must be positive");
    if (m.nu.tail_exponent <= 1.0)
        throw DivergenceError("compute_B_tilde: nu has a divergent tail");
    if (m.mu.singularity_exponent <= -1.0)
        throw DivergenceError("compute_B_tilde: mu has no finite mass near 0");
    const double inner_tol = rel_tol / 10.0;
    auto objective = [&](double x) {
        const double tail = quad::cumulative_tail(m.nu, x, inner_tol);
        const double mass = quad::cumulative_mass(m.mu, x, inner_tol);
        return std::pow(tail, (m.p - 1.0) / m.p) * std::pow(mass, 1.0 / m.q);
    };
    quad::ScanOptions opts;
    opts.rel_tol = rel_tol;
    quad::SupremumResult sup = quad::sup_scan(objective, opts);
    return {sup.value, sup};
}

TestFunction indicator(double x0, double x1) {
    require(x0 > 0.0 && x1 > x0, "indicator: requires 0 < x0 < x1");
    TestFunction t;
    t.f = [x0, x1](double y) { return (y >= x0 && y <= x1) ? 1.0 : 0.0; };
    t.support_lo = x0;
    t.support_hi = x1;
    t.name = "indicator[" + std::to_string(x0) + "," + std::to_string(x1) + "]";
    return t;
}

namespace {

// int_a^b f * density dnu over one smooth piece.
double piece_integral(const std::function<double(double)>& f,
                      const quad::WeightedMeasure& meas, double a, double b, double rel_tol) {
    if (b <= a) return 0.0;
    quad::IntegralSpec spec;
    spec.integrand = [&](double y) { return f(y) * meas.density(y); };
    spec.lower = a;
    spec.upper = b;
    spec.rel_tol = rel_tol;
    return quad::integrate(spec).value;
}

}  // namespace

InequalityTest test_inequality(const MeasurePair& m, const TestFunction& t, double rel_tol) {
    require(t.support_lo > 0.0 && t.support_hi > t.support_lo,
            "test_inequality: test function needs compact support in (0, inf)");

    // piece edges: support endpoints plus declared kinks
    std::vector<double> edges{t.support_lo};
    for (double b : t.breakpoints)
        if (b > t.support_lo && b < t.support_hi) edges.push_back(b);
    edges.push_back(t.support_hi);
    std::sort(edges.begin(), edges.end());

    // rhs = ( int f^p dnu )^(1/p)
    double rhs_p = 0.0;
    auto fp = [&](double y) { return std::pow(t.f(y), m.p); };
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        rhs_p += piece_integral(fp, m.nu, edges[i], edges[i + 1], rel_tol);
    if (!std::isfinite(rhs_p)) throw DomainError("test_inequality: right-hand side is infinite");
    if (rhs_p <= 0.0) throw DomainError("test_inequality: right-hand side is zero");

    // suffix nu-masses of f from each piece edge
    std::vector<double> suffix(edges.size(), 0.0);
    for (size_t i = edges.size() - 1; i-- > 0;) {
        suffix[i] = suffix[i + 1] + piece_integral(t.f, m.nu, edges[i], edges[i + 1], rel_tol);
    }
    auto g = [&](double x) -> double {
        if (x <= edges.front()) return suffix.front();
        if (x >= edges.back()) return 0.0;
        const size_t i = static_cast<size_t>(
            std::upper_bound(edges.begin(), edges.end(), x) - edges.begin() - 1);
        return suffix[i + 1] + piece_integral(t.f, m.nu, x, edges[i + 1], rel_tol);
    };

    // lhs^q = g(lo)^q mu([0, lo]) + int_lo^hi g^q dmu  (g == 0 past the support)
    double lhs_q = std::pow(suffix.front(), m.q) *
                   quad::cumulative_mass(m.mu, edges.front(), rel_tol);
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        quad::IntegralSpec spec;
        spec.integrand = [&](double x) { return std::pow(g(x), m.q) * m.mu.density(x); };
        spec.lower = edges[i];
        spec.upper = edges[i + 1];
        spec.rel_tol = rel_tol * 10.0;  // outer integral; inner g already adaptive
        lhs_q += quad::integrate(spec).value;
    }

    InequalityTest out;
    out.lhs = std::pow(lhs_q, 1.0 / m.q);
    out.rhs = std::pow(rhs_p, 1.0 / m.p);
    out.ratio = out.lhs / out.rhs;
    return out;
}

TestFamily family_from_name(const std::string& name) {
    if (name == "indicators") return TestFamily::indicators;
    if (name == "exponentials") return TestFamily::exponentials;
    if (name == "powers") return TestFamily::powers;
    if (name == "random_steps") return TestFamily::random_steps;
    throw DomainError("unknown bliss test family: " + name);
}

const char* family_name(TestFamily f) {
    switch (f) {
        case TestFamily::indicators: return "indicators";
        case TestFamily::exponentials: return "exponentials";
        case TestFamily::powers: return "powers";
        case TestFamily::random_steps: return "random_steps";
    }
    return "unknown";
}

namespace {

std::vector<TestFunction> build_family(const MeasurePair& m, TestFamily family, int budget,
                                       std::uint64_t seed) {
    std::vector<TestFunction> fs;
    fs.reserve(static_cast<size_t>(budget));
    switch (family) {
        case TestFamily::indicators: {
            // x0 sweeps the scan range; the upper truncation grows with x0 so
            // the tail mass lost beyond it stays below half a percent.
            const double e = std::max(m.nu.tail_exponent - 1.0, 0.05);
            const double decades = std::clamp(2.5 / e, 6.0, 24.0);
            for (int i = 0; i < budget; ++i) {
                const double x0 = std::pow(10.0, -8.0 + 16.0 * i / std::max(1, budget - 1));
                fs.push_back(indicator(x0, x0 * std::pow(10.0, decades)));
            }
            break;
        }
        case TestFamily::exponentials: {
            for (int i = 0; i < budget; ++i) {
                const double gam = 5.0 * i / std::max(1, budget - 1);
                TestFunction t;
                t.f = [gam](double y) { return std::pow(y, gam) * std::exp(-y); };
                t.support_lo = 1e-8;
                t.support_hi = 80.0 + 10.0 * gam;
                t.name = "y^" + std::to_string(gam) + " e^-y";
                fs.push_back(std::move(t));
            }
            break;
        }
        case TestFamily::powers: {
            for (int i = 0; i < budget; ++i) {
                const double gam = -0.3 + 1.8 * (i % 7) / 6.0;
                const double y1 = std::pow(10.0, 1.0 + 5.0 * (i / 7) / std::max(1, (budget - 1) / 7));
                TestFunction t;
                t.f = [gam](double y) { return std::pow(y, gam); };
                t.support_lo = 1e-2;
                t.support_hi = std::max(y1, 1.0);
                t.name = "y^" + std::to_string(gam) + " on [1e-2," + std::to_string(y1) + "]";
                fs.push_back(std::move(t));
            }
            break;
        }
        case TestFamily::random_steps: {
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<int> nsteps(3, 10);
            std::uniform_real_distribution<double> logx(-3.0, 3.0);
            std::uniform_real_distribution<double> height(0.1, 2.0);
            for (int i = 0; i < budget; ++i) {
                const int n = nsteps(rng);
                std::vector<double> xs(static_cast<size_t>(n) + 1);
                for (auto& x : xs) x = std::pow(10.0, logx(rng));
                std::sort(xs.begin(), xs.end());
                std::vector<double> hs(static_cast<size_t>(n));
                for (auto& h : hs) h = height(rng);
                auto lookup = [xs, hs](double y) -> double {
                    if (y < xs.front() || y >= xs.back()) return 0.0;
                    const size_t j = static_cast<size_t>(
                        std::upper_bound(xs.begin(), xs.end(), y) - xs.begin() - 1);
                    return hs[std::min(j, hs.size() - 1)];
                };
                TestFunction t;
                t.f = lookup;
                t.support_lo = xs.front();
                t.support_hi = xs.back();
                t.breakpoints.assign(xs.begin() + 1, xs.end() - 1);
                t.name = "random_steps#" + std::to_string(i);
                fs.push_back(std::move(t));
            }
            break;
        }
    }
    return fs;
}

}  // namespace

BracketReport bracket_optimal_constant(const MeasurePair& m, TestFamily family, int budget,
                                       std::uint64_t seed, double rel_tol) {
    require(budget >= 1, "bracket_optimal_constant: budget must be >= 1");
    BracketReport rep;
    BTildeResult bt = compute_B_tilde(m);
    rep.B_tilde = bt.value;
    rep.upper = specfn::k_qp(m.q, m.p) * bt.value;
    rep.upper_ok = true;
    for (const auto& t : build_family(m, family, budget, seed)) {
        const double ratio = test_inequality(m, t, rel_tol).ratio;
        ++rep.evaluated;
        if (ratio > rep.observed_sup) {
            rep.observed_sup = ratio;
            rep.best_function = t.name;
        }
        if (ratio > rep.upper * (1.0 + 1e-6)) rep.upper_ok = false;
    }
    rep.lower_ok = rep.observed_sup >= 0.99 * rep.B_tilde;
    return rep;
}

}  // namespace isoc::bliss
