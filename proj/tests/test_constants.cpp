#include <doctest.h>

#include <cmath>

#include "constants.hpp"
#include "oracles.hpp"
#include "specfn.hpp"

using namespace isoc;
namespace pf = isoc::profile;
namespace cn = isoc::constants;

namespace {
bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

double euclid_b1_closed(int N, double p) {
    const double n = N;
    const double C = n * std::pow(specfn::unit_ball_volume(N), 1.0 / n);
    return std::pow(n * (p - 1.0) / (n - p), (p - 1.0) / p) / C;
}

double product_b1_closed(int m, int k, double p, double a) {
    const double n = m + k;
    return (1.0 / a) * std::pow((n - p) / n, (n - p) / (n * p)) *
           std::pow(k / (k - p), (n - 1.0) / n) * std::pow(p - 1.0, (p - 1.0) / p);
}
}  // namespace

TEST_CASE("B1 for euclidean profiles matches the closed form") {
    for (auto [N, p] : std::vector<std::pair<int, double>>{{3, 2.0}, {4, 2.0}, {5, 2.0}}) {
        auto prof = pf::euclidean_profile(N);
        auto b1 = cn::compute_B1(prof, p);
        CHECK(close(b1.value, euclid_b1_closed(N, p), 1e-8));
    }
}

TEST_CASE("B1 for product profiles: closed form, attainment, b-independence") {
    auto prof = pf::product_profile(1, 3, 1.0, 1.0);
    auto b1 = cn::compute_B1(prof, 2.0);
    // 50-digit evaluation of the closed form
    CHECK(close(b1.value, 1.916829312738817427566, 1e-7));
    CHECK(b1.where.attained == quad::Attainment::limit_at_infinity);

    auto prof2 = pf::product_profile(1, 3, 1.0, 2.0);  // b enters only through w
    CHECK(close(cn::compute_B1(prof2, 2.0).value, 1.916829312738817427566, 1e-7));
}

TEST_CASE("B1 requires hyperbolicity and an integrable inner integrand") {
    CHECK_THROWS_AS(cn::compute_B1(pf::product_profile(2, 2, 1.0, 1.0), 2.0), DivergenceError);
    CHECK_THROWS_AS(cn::compute_B1(pf::euclidean_profile(3), 3.5), DomainError);  // p > N
    CHECK_NOTHROW(cn::compute_B1(pf::power_log_profile(3, 1.0, 0.51, 0.0), 2.0));

    // hyperbolic profile whose inner integrand still diverges at 0:
    // exponent 0.4 near zero gives (0.4 - 2/3) p* = -1.6
    pf::IsoperimetricProfile steep;
    steep.h = [](double s) { return s <= 1.0 ? std::pow(s, 0.4) : std::pow(s, 0.7); };
    steep.N = 3;
    steep.C_N = 1.0;
    steep.exponent_at_zero = 0.4;
    steep.exponent_at_infinity = 0.7;
    steep.name = "steep";
    CHECK_THROWS_AS(cn::compute_B1(steep, 2.0), DivergenceError);
}

TEST_CASE("B1 scaling law under h -> c h, C_N -> c C_N") {
    auto base = pf::product_profile(1, 3, 1.0, 1.0);
    const double b1 = cn::compute_B1(base, 2.0).value;
    for (double c : {0.5, 2.0, 10.0}) {
        auto scaled = base;
        scaled.h = [c, h = base.h](double s) { return c * h(s); };
        scaled.C_N = c * base.C_N;
        scaled.coeff_at_zero = c * base.coeff_at_zero;
        scaled.coeff_at_infinity = c * base.coeff_at_infinity;
        CHECK(close(cn::compute_B1(scaled, 2.0).value, b1 / c, 1e-7));
    }
}

TEST_CASE("B1 increases with p") {
    auto eucl = pf::euclidean_profile(4);
    double prev = 0.0;
    for (double p : {1.5, 2.0, 2.5, 3.0, 3.5}) {
        const double v = cn::compute_B1(eucl, p).value;
        CHECK(v > prev);
        prev = v;
    }
    auto prod = pf::product_profile(1, 4, 1.0, 1.0);
    prev = 0.0;
    for (double p : {1.5, 2.0, 2.5, 3.0, 3.5}) {
        const double v = cn::compute_B1(prod, p).value;
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("B2 euclidean closed form") {
    for (auto [N, p] : std::vector<std::pair<int, double>>{{3, 2.0}, {4, 2.0}, {4, 3.0}}) {
        auto prof = pf::euclidean_profile(N);
        auto g = pf::euclidean_geometry(N);
        auto b2 = cn::compute_B2(prof, g, p);
        const double expected = std::pow(p - 1.0, (p - 1.0) / p) / (N - p);
        CHECK(close(b2.value, expected, 1e-8));
    }
}

TEST_CASE("B2 for the product model matches a dense trapezoid oracle") {
    const double H = 2.0 * M_PI;
    auto g = pf::product_model_geometry(1, 3, H);
    auto prof = pf::profile_from_geometry(g);
    const double p = 2.0;
    auto b2 = cn::compute_B2(prof, g, p);

    oracle::TrapezoidSup sup;
    sup.head = [&](double t) { return std::pow(g.V_inverse(t), -p); };
    sup.tail = [&](double t) { return std::pow(prof.h(t), -p / (p - 1.0)); };
    sup.head_exponent = -p / 4.0;
    sup.tail_exponent = prof.exponent_at_infinity * p / (p - 1.0);
    sup.p = p;
    const double ref = sup.run(1e-10, 1e10, 1000000);
    CHECK(close(b2.value, ref, 1e-5));
}

TEST_CASE("theorem constants") {
    auto [C1, C2] = cn::theorem_constants(1.0, 1.0, 3, 2.0);
    CHECK(close(C1, specfn::k_pstar_p(3, 2.0), 1e-14));
    CHECK(close(C2, 4.0, 1e-14));
    auto [C1z, C2z] = cn::theorem_constants(0.0, 0.5, 3, 2.0);
    CHECK(C1z == 0.0);
    CHECK(close(C2z, 1.0, 1e-14));

    // euclidean pipeline: C1 = S(N,p), C2 = (p/(N-p))^p
    for (auto [N, p] : std::vector<std::pair<int, double>>{{3, 2.0}, {4, 2.0}}) {
        auto prof = pf::euclidean_profile(N);
        auto g = pf::euclidean_geometry(N);
        auto rep = cn::compute_constants(prof, &g, p, std::nullopt);
        REQUIRE(rep.hyperbolic);
        CHECK(close(*rep.C1, specfn::sobolev_best_constant(N, p), 1e-8));
        CHECK(close(*rep.C2, std::pow(p / (N - p), p), 1e-8));
    }
}

TEST_CASE("hardy-sobolev constant") {
    const double C1 = 0.7, C2 = 3.0;
    // q = 0 degenerates to C1^(p*)
    CHECK(close(cn::hardy_sobolev_constant(C1, C2, 4, 2.0, 0.0), std::pow(C1, 4.0), 1e-13));
    // N=4, p=2, q=1: C1^2 sqrt(C2)
    CHECK(close(cn::hardy_sobolev_constant(C1, C2, 4, 2.0, 1.0), C1 * C1 * std::sqrt(C2),
                1e-13));
    // q -> p- limit approaches C2
    CHECK(close(cn::hardy_sobolev_constant(C1, C2, 4, 2.0, 2.0 - 1e-6), C2, 1e-4));
    CHECK_THROWS_AS(cn::hardy_sobolev_constant(C1, C2, 4, 2.0, 2.0), DomainError);
    CHECK_THROWS_AS(cn::hardy_sobolev_constant(C1, C2, 4, 2.0, 2.5), DomainError);
}

TEST_CASE("power-like B1 bound") {
    // alpha = (N-1)/N reduces to the euclidean closed form
    for (auto [N, p] : std::vector<std::pair<int, double>>{{3, 2.0}, {5, 2.0}, {6, 4.0}}) {
        const double n = N;
        const double C = n * std::pow(specfn::unit_ball_volume(N), 1.0 / n);
        CHECK(close(cn::b1_bound_power_like(N, p, (n - 1.0) / n, C), euclid_b1_closed(N, p),
                    1e-12));
    }
    // bound blows up as alpha approaches (p-1)/p from above
    double prev = 0.0;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const double v = cn::b1_bound_power_like(3, 2.0, 0.5 + eps, 1.0);
        CHECK(v > prev);
        prev = v;
    }
    CHECK(prev > 1e2);
    CHECK_THROWS_AS(cn::b1_bound_power_like(3, 2.0, 0.5, 1.0), DomainError);
    CHECK_THROWS_AS(cn::b1_bound_power_like(3, 2.0, 0.9, 1.0), DomainError);

    // computed B1 never exceeds the bound at the profile's alpha
    const std::vector<double> grid = pf::log_grid(1e-8, 1e8, 401);
    struct Case {
        pf::IsoperimetricProfile prof;
        double p;
    };
    for (const auto& c : {Case{pf::euclidean_profile(3), 2.0},
                          Case{pf::product_profile(1, 3, 1.0, 1.0), 2.0},
                          Case{pf::paraboloid_profile(4, 0.6), 2.0},
                          Case{pf::power_log_profile(3, 1.0, 0.6, 0.3), 2.0}}) {
        auto alpha = pf::alpha_exponent(c.prof, c.prof.N, c.p, grid);
        REQUIRE(alpha.has_value());
        const double bound = cn::b1_bound_power_like(c.prof.N, c.p, *alpha, c.prof.C_N);
        const double b1 = cn::compute_B1(c.prof, c.p).value;
        CHECK(b1 <= bound * (1.0 + 1e-6));
    }
}

TEST_CASE("general C2 bound") {
    // p=2, alpha = 1/2 + delta, c0 = c1 = 1: (2/(2 delta))^2
    for (double delta : {0.1, 0.05, 0.01}) {
        CHECK(close(cn::c2_bound_general(2.0, 0.5 + delta, 1.0, 1.0), 1.0 / (delta * delta),
                    1e-12));
    }
    // swapping (c0, c1) -> (1/c1, 1/c0) leaves the bound unchanged
    CHECK(close(cn::c2_bound_general(2.0, 0.75, 0.5, 3.0),
                cn::c2_bound_general(2.0, 0.75, 1.0 / 3.0, 2.0), 1e-14));
    // euclidean-like data dominates the computed C2
    auto prof = pf::euclidean_profile(4);
    auto g = pf::euclidean_geometry(4);
    auto rep = cn::compute_constants(prof, &g, 2.0, std::nullopt);
    CHECK(cn::c2_bound_general(2.0, 3.0 / 4.0, 1.0, 1.0) >= *rep.C2);
    CHECK_THROWS_AS(cn::c2_bound_general(2.0, 0.5, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(cn::c2_bound_general(2.0, 0.75, 0.0, 1.0), DomainError);
}

TEST_CASE("product b coefficient") {
    CHECK(close(cn::product_b_coefficient(1, 5.0), 10.0, 1e-14));  // omega_1 = 2
    CHECK(close(cn::product_b_coefficient(3, 1.0), 3.0 * std::cbrt(4.0 * M_PI / 3.0), 1e-14));
    const double r = 0.7;
    CHECK(close(cn::product_b_coefficient(2, 2.0 * M_PI * r),
                2.0 * std::sqrt(M_PI * 2.0 * M_PI * r), 1e-14));
    CHECK_THROWS_AS(cn::product_b_coefficient(0, 1.0), DomainError);
}

TEST_CASE("non-hyperbolic pipeline reports and stops") {
    auto prof = pf::product_profile(2, 2, 1.0, 1.0);
    auto rep = cn::compute_constants(prof, nullptr, 2.0, std::nullopt);
    CHECK_FALSE(rep.hyperbolic);
    CHECK_FALSE(rep.B1.has_value());
    CHECK(std::isinf(rep.hyperbolicity_integral));
}

TEST_CASE("B1 is stable under a denser scan grid") {
    // same objective as compute_B1, rebuilt here with a doubled grid density
    auto prof = pf::product_profile(1, 3, 1.0, 1.0);
    const double p = 2.0;
    const double n = prof.N;
    const double pstar = n * p / (n - p);
    const double pp = p / (p - 1.0);
    auto objective = [&](double s) {
        quad::IntegralSpec j1;
        j1.integrand = [&](double t) {
            return std::pow(prof.h(t) / (prof.C_N * std::pow(t, (n - 1.0) / n)), pstar);
        };
        j1.lower = 0.0;
        j1.upper = s;
        j1.rel_tol = 1e-9;
        quad::IntegralSpec j2;
        j2.integrand = [&](double t) { return std::pow(prof.h(t), -pp); };
        j2.lower = s;
        j2.upper = kInf;
        j2.tail_exponent = prof.exponent_at_infinity * pp;
        j2.rel_tol = 1e-9;
        return std::pow(quad::integrate(j1).value, 1.0 / pstar) *
               std::pow(quad::integrate(j2).value, 1.0 / pp);
    };
    quad::ScanOptions dense;
    dense.points_per_decade = 50;
    dense.rel_tol = 1e-8;
    const double via_dense = quad::sup_scan(objective, dense).value;
    const double via_default = cn::compute_B1(prof, p).value;
    CHECK(close(via_dense, via_default, 1e-7));
}
