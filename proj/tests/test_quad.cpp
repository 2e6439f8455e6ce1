#include <doctest.h>

#include <cmath>
#include <random>

#include "quad.hpp"

using namespace isoc;
using quad::Attainment;
using quad::IntegralSpec;
using quad::ScanOptions;
using quad::WeightedMeasure;

namespace {
bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}
}  // namespace

TEST_CASE("integrate handles endpoint singularities") {
    IntegralSpec s;
    s.integrand = [](double t) { return 1.0 / std::sqrt(t); };
    s.lower = 0.0;
    s.upper = 1.0;
    s.singularity_exponent = -0.5;
    auto r = quad::integrate(s);
    CHECK(close(r.value, 2.0, 1e-10));
}

TEST_CASE("integrate handles declared power tails") {
    IntegralSpec s;
    s.integrand = [](double t) { return 1.0 / (t * t); };
    s.lower = 1.0;
    s.upper = kInf;
    s.tail_exponent = 2.0;
    CHECK(close(quad::integrate(s).value, 1.0, 1e-10));
}

TEST_CASE("integrate handles super-polynomial decay") {
    IntegralSpec s;
    s.integrand = [](double t) { return std::exp(-t); };
    s.lower = 0.0;
    s.upper = kInf;
    CHECK(close(quad::integrate(s).value, 1.0, 1e-10));
}

TEST_CASE("integrate rejects declared-divergent specs") {
    IntegralSpec s;
    s.integrand = [](double t) { return 1.0 / t; };
    s.lower = 1.0;
    s.upper = kInf;
    s.tail_exponent = 1.0;
    CHECK_THROWS_AS(quad::integrate(s), DivergenceError);

    IntegralSpec s2;
    s2.integrand = [](double t) { return 1.0 / t; };
    s2.lower = 0.0;
    s2.upper = 1.0;
    s2.singularity_exponent = -1.0;
    CHECK_THROWS_AS(quad::integrate(s2), DivergenceError);
}

TEST_CASE("integrate is additive over random splits") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    auto f = [](double t) { return std::exp(-t) * std::cos(3.0 * t) + std::sqrt(t); };
    IntegralSpec whole;
    whole.integrand = f;
    whole.lower = 0.0;
    whole.upper = 1.0;
    const double total = quad::integrate(whole).value;
    for (int i = 0; i < 24; ++i) {
        const double c = u(rng);
        IntegralSpec left = whole, right = whole;
        left.upper = c;
        right.lower = c;
        CHECK(close(quad::integrate(left).value + quad::integrate(right).value, total, 1e-9));
    }
}

TEST_CASE("integrate is deterministic") {
    IntegralSpec s;
    s.integrand = [](double t) { return std::sin(t * t) + 2.0; };
    s.lower = 0.0;
    s.upper = 10.0;
    const auto a = quad::integrate(s);
    const auto b = quad::integrate(s);
    CHECK(a.value == b.value);
    CHECK(a.error_estimate == b.error_estimate);
}

TEST_CASE("sup_scan finds an interior maximum") {
    auto r = quad::sup_scan([](double s) { return s * std::exp(-s); });
    CHECK(r.attained == Attainment::interior);
    CHECK(close(r.location, 1.0, 1e-6));
    CHECK(close(r.value, std::exp(-1.0), 1e-10));
}

TEST_CASE("sup_scan detects a boundary limit at infinity") {
    auto r = quad::sup_scan([](double s) { return 1.0 - std::exp(-s); });
    CHECK(r.attained == Attainment::limit_at_infinity);
    CHECK(std::isinf(r.location));
    CHECK(close(r.value, 1.0, 1e-8));
}

TEST_CASE("sup_scan detects a boundary limit at zero") {
    auto r = quad::sup_scan([](double s) { return 1.0 / (1.0 + std::sqrt(s)); });
    CHECK(r.attained == Attainment::limit_at_zero);
    CHECK(r.location == 0.0);
    CHECK(close(r.value, 1.0, 1e-6));
}

TEST_CASE("sup_scan honors declared boundary limits") {
    ScanOptions opts;
    opts.limit_at_infinity = 1.0;
    auto r = quad::sup_scan([](double s) { return 1.0 - std::exp(-s); }, opts);
    CHECK(r.attained == Attainment::limit_at_infinity);
    CHECK(r.value == 1.0);
}

TEST_CASE("sup_scan reports divergent objectives") {
    CHECK_THROWS_AS(quad::sup_scan([](double s) { return std::sqrt(s); }),
                    DivergenceError);
}

TEST_CASE("sup_scan rejects non-finite objectives") {
    CHECK_THROWS_AS(quad::sup_scan([](double s) { return s > 1.0 ? std::nan("") : s; }),
                    EvaluationError);
}

TEST_CASE("sup_scan dominates the objective at random probes") {
    auto obj = [](double s) {
        const double l = std::log(s);
        return std::exp(-0.1 * l * l) * (2.0 + std::sin(l));
    };
    auto r = quad::sup_scan(obj);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-8.0, 8.0);
    for (int i = 0; i < 10000; ++i) {
        const double s = std::pow(10.0, u(rng));
        CHECK(r.value >= obj(s) * (1.0 - 1e-8));
    }
}

TEST_CASE("sup_scan is deterministic") {
    auto obj = [](double s) { return s * std::exp(-0.5 * s); };
    auto a = quad::sup_scan(obj);
    auto b = quad::sup_scan(obj);
    CHECK(a.value == b.value);
    CHECK(a.location == b.location);
}

TEST_CASE("cumulative_tail on a power density") {
    WeightedMeasure m;
    m.density = [](double t) { return t < 1.0 ? 0.0 : 1.0 / (t * t); };
    m.tail_exponent = 2.0;
    m.name = "t^-2 on (1,inf)";
    CHECK(close(quad::cumulative_tail(m, 2.0), 0.5, 1e-10));

    // nonincreasing in x, to 0 at infinity
    double prev = kInf;
    for (double x : {1.0, 2.0, 8.0, 64.0, 1e4, 1e8}) {
        const double v = quad::cumulative_tail(m, x);
        CHECK(v <= prev * (1.0 + 1e-12));
        prev = v;
    }
    CHECK(prev < 1e-7);
}

TEST_CASE("cumulative_tail matches the closed form for the euclidean nu measure") {
    // dnu = C_N^(-p/(p-1)) y^(-(N-1)p/(N(p-1))) dy with N = 3, p = 2
    const double om3 = 4.0 * M_PI / 3.0;
    const double cn = 3.0 * std::cbrt(om3);
    WeightedMeasure m;
    m.density = [cn](double y) { return std::pow(cn, -2.0) * std::pow(y, -4.0 / 3.0); };
    m.singularity_exponent = -4.0 / 3.0;
    m.tail_exponent = 4.0 / 3.0;
    // closed-form antiderivative: 3 y^(-1/3) / cn^2 evaluated at 1
    CHECK(close(quad::cumulative_tail(m, 1.0), 3.0 / (cn * cn), 1e-10));
}

TEST_CASE("cumulative_tail split consistency") {
    WeightedMeasure m;
    m.density = [](double t) { return std::pow(1.0 + t, -2.5); };
    m.tail_exponent = 2.5;
    const double direct = quad::cumulative_tail(m, 3.0);
    IntegralSpec mid;
    mid.integrand = m.density;
    mid.lower = 3.0;
    mid.upper = 500.0;
    const double stitched = quad::integrate(mid).value + quad::cumulative_tail(m, 500.0);
    CHECK(close(direct, stitched, 1e-10));
}

TEST_CASE("cumulative_tail rejects divergent tails") {
    WeightedMeasure m;
    m.density = [](double t) { return 1.0 / (1.0 + t); };
    m.tail_exponent = 1.0;
    CHECK_THROWS_AS(quad::cumulative_tail(m, 1.0), DivergenceError);
}

TEST_CASE("cumulative_mass with an integrable singularity") {
    WeightedMeasure m;
    m.density = [](double t) { return 1.0 / std::sqrt(t); };
    m.singularity_exponent = -0.5;
    m.tail_exponent = 0.5;
    CHECK(close(quad::cumulative_mass(m, 4.0), 4.0, 1e-10));
    CHECK(quad::cumulative_mass(m, 0.0) == 0.0);
}
