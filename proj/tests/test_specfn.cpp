#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "specfn.hpp"

using namespace isoc;
namespace sf = isoc::specfn;

namespace {
bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}
}  // namespace

TEST_CASE("gamma at classical points") {
    CHECK(sf::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sf::gamma(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(sf::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK_THROWS_AS(sf::gamma(0.0), DomainError);
    CHECK_THROWS_AS(sf::gamma(-1.5), DomainError);
    CHECK_THROWS_AS(sf::gamma(200.0), DomainError);
}

TEST_CASE("beta against defining integral and identities") {
    CHECK(sf::beta(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    // quadrature of the defining integral, independent oracle
    const double q = oracle::simpson([](double x) { return x * (1 - x) * (1 - x); }, 0.0, 1.0);
    CHECK(close(sf::beta(2.0, 3.0), q, 1e-12));
    CHECK(close(sf::beta(2.0, 3.0), 1.0 / 12.0, 1e-14));
    CHECK(sf::beta(0.5, 0.5) == doctest::Approx(M_PI).epsilon(1e-14));
    CHECK_THROWS_AS(sf::beta(0.0, 1.0), DomainError);

    // symmetry and the Gamma relation on a log grid
    for (double a = 1e-2; a <= 50.0; a *= 3.7) {
        for (double b = 1e-2; b <= 50.0; b *= 4.1) {
            CHECK(close(sf::beta(a, b), sf::beta(b, a), 1e-13));
            if (a + b <= 170.0) {
                CHECK(close(sf::beta(a, b) * sf::gamma(a + b), sf::gamma(a) * sf::gamma(b),
                            1e-12));
            }
        }
    }
}

TEST_CASE("unit ball volumes") {
    CHECK(sf::unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sf::unit_ball_volume(2) == doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(sf::unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(sf::unit_ball_volume(0), DomainError);
}

TEST_CASE("k_qp values and the two evaluation paths") {
    CHECK(sf::k_qp(2.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    // 50-digit evaluation of both the Beta and the Gamma form (they agree)
    CHECK(close(sf::k_qp(4.0, 2.0), 1.316074012952492460819, 1e-13));
    CHECK(close(sf::k_pstar_p(4, 2.0), 1.316074012952492460819, 1e-13));
    CHECK(close(sf::k_pstar_p(3, 2.0), 1.192933638586199370903, 1e-13));

    // Beta form vs Gamma form at q = p* across a grid
    for (int N = 3; N <= 10; ++N) {
        for (double p = 1.1; p < N - 0.05; p += 0.45) {
            const double pstar = N * p / (N - p);
            CHECK(close(sf::k_qp(pstar, p), sf::k_pstar_p(N, p), 1e-12));
        }
    }
    CHECK_THROWS_AS(sf::k_qp(1.5, 2.0), DomainError);  // q < p
    CHECK_THROWS_AS(sf::k_qp(2.0, 1.0), DomainError);  // p <= 1
}

TEST_CASE("k_qp is continuous at q -> p+") {
    for (double p : {1.5, 2.0, 3.0}) {
        const double kpp = sf::k_qp(p, p);
        double prev_gap = 1e300;
        for (double eps : {1e-3, 1e-4, 1e-5}) {
            const double gap = std::abs(sf::k_qp(p + eps, p) - kpp);
            CHECK(gap < prev_gap);
            prev_gap = gap;
        }
        CHECK(prev_gap < 1e-3);
    }
}

TEST_CASE("sobolev best constant") {
    // 50-digit evaluations of the closed form
    CHECK(close(sf::sobolev_best_constant(3, 2.0), 0.4272605428625266649877, 1e-13));
    CHECK(close(sf::sobolev_best_constant(4, 2.0), 0.3121892056977779516773, 1e-13));
    CHECK_THROWS_AS(sf::sobolev_best_constant(3, 1.0), DomainError);
    CHECK_THROWS_AS(sf::sobolev_best_constant(3, 3.0), DomainError);

    // factorization through k_{p*,p}
    for (int N = 3; N <= 10; ++N) {
        for (double p = 1.1; p < N - 0.05; p += 0.5) {
            const double n = N;
            const double b1 = std::pow(n * (p - 1.0) / (n - p), (p - 1.0) / p) /
                              (n * std::pow(sf::unit_ball_volume(N), 1.0 / n));
            CHECK(close(sf::sobolev_best_constant(N, p), b1 * sf::k_pstar_p(N, p), 1e-12));
        }
    }
}
