#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "quad.hpp"
#include "specfn.hpp"

namespace isoc::verify {

namespace {

constexpr double kCellTol = 1e-10;

// Adaptive integral of `f` over one cell of the test function.
double cell_integral(const std::function<double(double)>& f, double a, double b,
                     double sigma_at_zero = 0.0) {
    if (b <= a) return 0.0;
    quad::IntegralSpec spec;
    spec.integrand = f;
    spec.lower = a;
    spec.upper = b;
    spec.singularity_exponent = (a == 0.0) ? sigma_at_zero : 0.0;
    spec.rel_tol = kCellTol;
    return quad::integrate(spec).value;
}

}  // namespace

VerifyContext make_context(const profile::IsoperimetricProfile& prof,
                           const profile::ModelGeometry& g, double p, double rel_tol) {
    require(rel_tol > 0.0, "verify: rel_tol must be positive");
    auto b1 = constants::compute_B1(prof, p);
    auto b2 = constants::compute_B2(prof, g, p);
    auto [C1, C2] = constants::theorem_constants(b1.value, b2.value, prof.N, p);
    return {&prof, &g, p, C1, C2, rel_tol};
}

double dirichlet_energy(const VerifyContext& ctx, const rearrange::PiecewiseLinear& phi) {
    double total = 0.0;
    for (size_t i = 0; i + 1 < phi.x.size(); ++i) {
        const double slope = (phi.y[i + 1] - phi.y[i]) / (phi.x[i + 1] - phi.x[i]);
        if (slope == 0.0) continue;
        const double va = phi.x[i] > 0.0 ? ctx.g->V(phi.x[i]) : 0.0;
        total += std::pow(std::abs(slope), ctx.p) * (ctx.g->V(phi.x[i + 1]) - va);
    }
    return total;
}

namespace {

void check_phi(const rearrange::PiecewiseLinear& phi) {
    require(phi.x.size() >= 2, "verify: test function needs at least two nodes");
    require(phi.y.back() == 0.0, "verify: test function must vanish at the support edge");
    for (double v : phi.y) require(v >= 0.0, "verify: test function must be nonnegative");
}

double integrate_cells(const VerifyContext& ctx, const rearrange::PiecewiseLinear& phi,
                       const std::function<double(double)>& integrand, double sigma_at_zero) {
    double total = 0.0;
    for (size_t i = 0; i + 1 < phi.x.size(); ++i) {
        if (phi.y[i] == 0.0 && phi.y[i + 1] == 0.0) continue;
        total += cell_integral(integrand, phi.x[i], phi.x[i + 1], sigma_at_zero);
    }
    return total;
}

}  // namespace

VerifyResult verify_sobolev(const VerifyContext& ctx, const rearrange::PiecewiseLinear& phi) {
    check_phi(phi);
    const double n = static_cast<double>(ctx.prof->N);
    const double pstar = n * ctx.p / (n - ctx.p);
    auto integrand = [&](double r) {
        const double f = phi(r);
        if (f == 0.0) return 0.0;
        return std::pow(f, pstar) *
               std::pow(profile::weight_w(*ctx.prof, ctx.g->V(r)), -pstar) * ctx.g->A(r);
    };
    const double lhs = std::pow(integrate_cells(ctx, phi, integrand, 0.0), 1.0 / pstar);
    const double energy = dirichlet_energy(ctx, phi);
    const double rhs = ctx.C1 * std::pow(energy, 1.0 / ctx.p);
    VerifyResult res;
    res.lhs = lhs;
    res.rhs = rhs;
    res.ratio = energy > 0.0 ? lhs / std::pow(energy, 1.0 / ctx.p) : 0.0;
    res.pass = lhs <= rhs * (1.0 + ctx.rel_tol);
    return res;
}

VerifyResult verify_hardy(const VerifyContext& ctx, const rearrange::PiecewiseLinear& phi) {
    check_phi(phi);
    const double n = static_cast<double>(ctx.prof->N);
    if (phi.x.front() == 0.0 && phi.y.front() != 0.0)
        require(ctx.p < n, "verify_hardy: phi(0) != 0 requires p < N for an integrable lhs");
    auto integrand = [&](double r) {
        const double f = phi(r);
        if (f == 0.0) return 0.0;
        return std::pow(f / r, ctx.p) * ctx.g->A(r);
    };
    // near r = 0 the integrand behaves like r^(N-1-p) when phi(0) > 0
    const double sigma0 = (phi.y.front() > 0.0) ? n - 1.0 - ctx.p : 0.0;
    const double lhs = integrate_cells(ctx, phi, integrand, sigma0);
    const double energy = dirichlet_energy(ctx, phi);
    const double rhs = ctx.C2 * energy;
    VerifyResult res;
    res.lhs = lhs;
    res.rhs = rhs;
    res.ratio = energy > 0.0 ? lhs / energy : 0.0;
    res.pass = lhs <= rhs * (1.0 + ctx.rel_tol);
    return res;
}

VerifyResult verify_hardy_sobolev(const VerifyContext& ctx, double q,
                                  const rearrange::PiecewiseLinear& phi) {
    check_phi(phi);
    require(q >= 0.0 && q < ctx.p, "verify_hardy_sobolev: requires 0 <= q < p");
    const double n = static_cast<double>(ctx.prof->N);
    const double psq = ctx.p * (n - q) / (n - ctx.p);
    const double hs = constants::hardy_sobolev_constant(ctx.C1, ctx.C2, ctx.prof->N, ctx.p, q);
    auto integrand = [&](double r) {
        const double f = phi(r);
        if (f == 0.0) return 0.0;
        return std::pow(f, psq) * std::pow(r, -q) *
               std::pow(profile::weight_w(*ctx.prof, ctx.g->V(r)), -(psq - q)) * ctx.g->A(r);
    };
    const double sigma0 = (phi.y.front() > 0.0 && phi.x.front() == 0.0) ? n - 1.0 - q : 0.0;
    const double lhs = integrate_cells(ctx, phi, integrand, sigma0);
    const double energy = dirichlet_energy(ctx, phi);
    const double rhs = hs * std::pow(energy, (n - q) / (n - ctx.p));
    VerifyResult res;
    res.lhs = lhs;
    res.rhs = rhs;
    res.ratio = rhs > 0.0 ? lhs / rhs : 0.0;
    res.pass = lhs <= rhs * (1.0 + ctx.rel_tol);
    return res;
}

Family family_from_name(const std::string& name) {
    if (name == "tent") return Family::tent;
    if (name == "bump") return Family::bump;
    if (name == "talenti") return Family::talenti;
    if (name == "power_cutoff") return Family::power_cutoff;
    if (name == "random_monotone") return Family::random_monotone;
    if (name == "random_nonmonotone") return Family::random_nonmonotone;
    throw DomainError("unknown test function family: " + name);
}

const char* family_name(Family f) {
    switch (f) {
        case Family::tent: return "tent";
        case Family::bump: return "bump";
        case Family::talenti: return "talenti";
        case Family::power_cutoff: return "power_cutoff";
        case Family::random_monotone: return "random_monotone";
        case Family::random_nonmonotone: return "random_nonmonotone";
    }
    return "unknown";
}

namespace {

rearrange::PiecewiseLinear log_sampled(const std::function<double(double)>& f, double r_lo,
                                       double r_hi, int per_decade, bool node_at_zero) {
    std::vector<double> xs, ys;
    if (node_at_zero) {
        xs.push_back(0.0);
        ys.push_back(f(0.0));
    }
    const double e0 = std::log10(r_lo), e1 = std::log10(r_hi);
    const int n = std::max(8, static_cast<int>((e1 - e0) * per_decade));
    for (int i = 0; i <= n; ++i) {
        xs.push_back(std::pow(10.0, e0 + (e1 - e0) * i / n));
        ys.push_back(std::max(0.0, f(xs.back())));
    }
    ys.back() = 0.0;
    return rearrange::make_piecewise_linear(std::move(xs), std::move(ys));
}

RadialTestFunction talenti_function(int N, double p, double R_max) {
    const double n = static_cast<double>(N);
    const double pp = p / (p - 1.0);
    auto u = [n, p, pp](double r) { return std::pow(1.0 + std::pow(r, pp), -(n - p) / p); };
    const double off = u(R_max);
    auto f = [u, off](double r) { return u(r) - off; };
    RadialTestFunction t;
    t.phi = log_sampled(f, 1e-3, R_max, 300, true);
    t.name = "talenti(R=" + std::to_string(R_max) + ")";
    return t;
}

}  // namespace

RadialTestFunction hardy_probe(int N, double p, double delta) {
    require(delta > 0.0 && delta < (N - p) / p, "hardy_probe: delta out of range");
    const double s0 = (static_cast<double>(N) - p) / p - delta;
    // support r in [10^-H, 10^H] with H = 2/(delta p); one-decade log ramps
    const double H = 2.0 / (delta * p);
    const double l1 = -H, l2 = H;
    const double W = 1.0;
    auto f = [s0, l1, l2, W](double r) {
        const double lg = std::log10(r);
        const double ramp =
            std::min({1.0, (lg - l1) / W, (l2 - lg) / W});
        return ramp <= 0.0 ? 0.0 : std::pow(r, -s0) * ramp;
    };
    RadialTestFunction t;
    t.phi = log_sampled(f, std::pow(10.0, l1), std::pow(10.0, l2), 200, false);
    t.name = "hardy_probe(delta=" + std::to_string(delta) + ")";
    return t;
}

std::vector<RadialTestFunction> make_family(Family family, int budget, std::uint64_t seed,
                                            int N, double p) {
    require(budget >= 1, "make_family: budget must be >= 1");
    std::vector<RadialTestFunction> fs;
    fs.reserve(static_cast<size_t>(budget));
    switch (family) {
        case Family::tent: {
            for (int i = 0; i < budget; ++i) {
                const double R = std::pow(10.0, -2.0 + 4.0 * i / std::max(1, budget - 1));
                RadialTestFunction t;
                t.phi = rearrange::make_piecewise_linear({0.0, R}, {1.0, 0.0});
                t.name = "tent(R=" + std::to_string(R) + ")";
                fs.push_back(std::move(t));
            }
            break;
        }
        case Family::bump: {
            for (int i = 0; i < budget; ++i) {
                const double c = std::pow(10.0, -1.0 + 2.0 * i / std::max(1, budget - 1));
                const double w = c / 3.0;
                auto f = [c, w](double r) { return std::exp(-((r - c) / w) * ((r - c) / w)); };
                std::vector<double> xs, ys;
                const double r0 = std::max(c - 6.0 * w, 0.0), r1 = c + 6.0 * w;
                const int n = 240;
                for (int j = 0; j <= n; ++j) {
                    xs.push_back(r0 + (r1 - r0) * j / n);
                    ys.push_back(f(xs.back()));
                }
                ys.front() = (r0 == 0.0) ? ys.front() : 0.0;
                ys.back() = 0.0;
                RadialTestFunction t;
                t.phi = rearrange::make_piecewise_linear(std::move(xs), std::move(ys));
                t.name = "bump(c=" + std::to_string(c) + ")";
                fs.push_back(std::move(t));
            }
            break;
        }
        case Family::talenti: {
            for (int i = 0; i < budget; ++i) {
                const double R = std::pow(10.0, 1.0 + 4.0 * i / std::max(1, budget - 1));
                fs.push_back(talenti_function(N, p, R));
            }
            break;
        }
        case Family::power_cutoff: {
            for (int i = 0; i < budget; ++i) {
                const double delta =
                    0.2 * std::pow(0.5, i % 4) * (1.0 + 0.1 * (i / 4));
                const double cap = 0.45 * (N - p) / p;
                fs.push_back(hardy_probe(N, p, std::min(delta, cap)));
            }
            break;
        }
        case Family::random_monotone: {
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<int> nknots(3, 9);
            std::uniform_real_distribution<double> logr(-1.5, 1.5);
            std::uniform_real_distribution<double> drop(0.05, 1.0);
            for (int i = 0; i < budget; ++i) {
                const int k = nknots(rng);
                std::vector<double> xs{0.0};
                for (int j = 0; j < k; ++j) xs.push_back(std::pow(10.0, logr(rng)));
                std::sort(xs.begin(), xs.end());
                xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
                std::vector<double> ys(xs.size());
                double v = 0.0;
                for (size_t j = xs.size(); j-- > 0;) {
                    ys[j] = v;
                    v += drop(rng);
                }
                ys.back() = 0.0;
                RadialTestFunction t;
                t.phi = rearrange::make_piecewise_linear(std::move(xs), std::move(ys));
                t.name = "random_monotone#" + std::to_string(i);
                fs.push_back(std::move(t));
            }
            break;
        }
        case Family::random_nonmonotone: {
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<int> nknots(4, 12);
            std::uniform_real_distribution<double> logr(-1.5, 1.5);
            std::uniform_real_distribution<double> val(0.0, 1.0);
            for (int i = 0; i < budget; ++i) {
                const int k = nknots(rng);
                std::vector<double> xs{0.0};
                for (int j = 0; j < k; ++j) xs.push_back(std::pow(10.0, logr(rng)));
                std::sort(xs.begin(), xs.end());
                xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
                std::vector<double> ys(xs.size());
                for (auto& y : ys) y = val(rng);
                ys.back() = 0.0;
                RadialTestFunction t;
                t.phi = rearrange::make_piecewise_linear(std::move(xs), std::move(ys));
                t.name = "random_nonmonotone#" + std::to_string(i);
                fs.push_back(std::move(t));
            }
            break;
        }
    }
    return fs;
}

SweepReport sobolev_quotient_sweep(const VerifyContext& ctx, Family family, int budget,
                                   std::uint64_t seed) {
    SweepReport rep;
    for (const auto& t : make_family(family, budget, seed, ctx.prof->N, ctx.p)) {
        VerifyResult r = verify_sobolev(ctx, t.phi);
        rep.rows.push_back({t.name, r.lhs, r.rhs, r.ratio, r.pass});
        rep.all_pass = rep.all_pass && r.pass;
        if (r.ratio > rep.max_quotient) {
            rep.max_quotient = r.ratio;
            rep.argmax = t.name;
        }
    }
    return rep;
}

Inequality inequality_from_name(const std::string& name) {
    if (name == "sobolev") return Inequality::sobolev;
    if (name == "hardy") return Inequality::hardy;
    if (name == "hardy-sobolev" || name == "hardy_sobolev") return Inequality::hardy_sobolev;
    throw DomainError("unknown inequality: " + name);
}

SweepReport verify_sweep(const VerifyContext& ctx, Inequality which, double q, Family family,
                         int budget, std::uint64_t seed) {
    SweepReport rep;
    for (const auto& t : make_family(family, budget, seed, ctx.prof->N, ctx.p)) {
        VerifyResult r;
        switch (which) {
            case Inequality::sobolev: r = verify_sobolev(ctx, t.phi); break;
            case Inequality::hardy: r = verify_hardy(ctx, t.phi); break;
            case Inequality::hardy_sobolev: r = verify_hardy_sobolev(ctx, q, t.phi); break;
        }
        rep.rows.push_back({t.name, r.lhs, r.rhs, r.ratio, r.pass});
        rep.all_pass = rep.all_pass && r.pass;
        if (r.ratio > rep.max_quotient) {
            rep.max_quotient = r.ratio;
            rep.argmax = t.name;
        }
    }
    return rep;
}

}  // namespace isoc::verify
