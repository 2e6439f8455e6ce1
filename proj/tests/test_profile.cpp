#include <doctest.h>

#include <cmath>

#include "profile.hpp"
#include "specfn.hpp"

using namespace isoc;
namespace pf = isoc::profile;

namespace {
bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}
const std::vector<double> kGrid = pf::log_grid(1e-8, 1e8, 401);
}  // namespace

TEST_CASE("euclidean profile basics") {
    auto prof = pf::euclidean_profile(3);
    const double om3 = 4.0 * M_PI / 3.0;
    CHECK(close(prof.h(1.0), 3.0 * std::cbrt(om3), 1e-14));
    for (double s : {1e-6, 0.37, 1.0, 42.0, 1e7}) {
        CHECK(close(pf::weight_w(prof, s), 1.0, 1e-13));
    }
    CHECK_THROWS_AS(pf::weight_w(prof, 0.0), DomainError);
    CHECK_THROWS_AS(prof(-1.0), DomainError);
}

TEST_CASE("product profile and its weight") {
    auto prof = pf::product_profile(1, 3, 1.0, 1.0);
    // h(s) = min(s^(3/4), s^(2/3)), crossover at s = 1
    CHECK(close(prof.h(0.0625), std::pow(0.0625, 0.75), 1e-14));
    CHECK(close(prof.h(16.0), std::pow(16.0, 2.0 / 3.0), 1e-14));
    CHECK(close(prof.h(1.0), 1.0, 1e-14));

    // w(s) = max(1, (a/b) s^(m/(k(m+k))))
    const double a = 1.0, b = 1.0;
    for (double s : {1e-4, 1.0, 55.0, 1e6}) {
        const double expected = std::max(1.0, (a / b) * std::pow(s, 1.0 / 12.0));
        CHECK(close(pf::weight_w(prof, s), expected, 1e-12));
    }
    CHECK(close(pf::weight_w(prof, 1e6), std::pow(10.0, 0.5), 1e-12));
}

TEST_CASE("every preset passes check_valid on the log grid") {
    CHECK(pf::check_valid(pf::euclidean_profile(3), kGrid).pass);
    CHECK(pf::check_valid(pf::euclidean_profile(6), kGrid).pass);
    CHECK(pf::check_valid(pf::product_profile(1, 3, 1.0, 1.0), kGrid).pass);
    CHECK(pf::check_valid(pf::product_profile(2, 3, 0.5, 2.0), kGrid).pass);
    CHECK(pf::check_valid(pf::paraboloid_profile(4, 0.6), kGrid).pass);
    CHECK(pf::check_valid(pf::bounded_geometry_profile(4, 2.0, 1.0, 1.0), kGrid).pass);
    CHECK(pf::check_valid(pf::bounded_geometry_profile(5, 3.0, 0.7, 4.0), kGrid).pass);
    CHECK(pf::check_valid(pf::power_log_profile(3, 1.0, 0.6, 0.3), kGrid).pass);
    CHECK(pf::check_valid(pf::profile_from_geometry(pf::product_model_geometry(1, 3, 2.0 * M_PI)),
                          kGrid)
              .pass);
}

TEST_CASE("check_valid flags a decreasing h") {
    pf::IsoperimetricProfile bad;
    bad.h = [](double s) { return 1.0 / s; };
    bad.N = 3;
    bad.C_N = 1.0;
    bad.name = "decreasing";
    auto rep = pf::check_valid(bad, pf::log_grid(0.1, 10.0, 21));
    CHECK_FALSE(rep.pass);
    bool has_h_issue = false;
    for (const auto& i : rep.issues) has_h_issue = has_h_issue || i.what == "h decreases";
    CHECK(has_h_issue);
}

TEST_CASE("bounded geometry preset evaluates the large-volume branch") {
    auto prof = pf::bounded_geometry_profile(4, 2.0, 1.0, 1.0);
    CHECK(close(prof.h(4.0), 2.0, 1e-14));  // theta V^(1-1/nu) = 4^(1/2)
    CHECK_THROWS_AS(pf::bounded_geometry_profile(4, 1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(pf::bounded_geometry_profile(4, 5.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(pf::paraboloid_profile(4, 1.0), DomainError);
}

TEST_CASE("p-hyperbolicity matches the exponent criterion") {
    auto eucl3 = pf::euclidean_profile(3);
    auto r = pf::is_p_hyperbolic(eucl3, 2.0);
    CHECK(r.hyperbolic);
    // int_1^inf (C_N t^(2/3))^-2 dt = 3 / C_N^2
    const double cn = 3.0 * std::cbrt(4.0 * M_PI / 3.0);
    CHECK(close(r.integral, 3.0 / (cn * cn), 1e-9));

    CHECK_FALSE(pf::is_p_hyperbolic(eucl3, 3.0).hyperbolic);  // p = N boundary
    CHECK(std::isinf(pf::is_p_hyperbolic(eucl3, 3.0).integral));

    auto prod2 = pf::product_profile(2, 2, 1.0, 1.0);
    CHECK_FALSE(pf::is_p_hyperbolic(prod2, 2.0).hyperbolic);  // p = k
    auto prod3 = pf::product_profile(1, 3, 1.0, 1.0);
    CHECK(pf::is_p_hyperbolic(prod3, 2.0).hyperbolic);

    // agreement with the analytic criterion for every preset on a p-grid
    for (const auto& prof :
         {pf::euclidean_profile(4), pf::product_profile(1, 3, 1.0, 1.0),
          pf::paraboloid_profile(4, 0.6), pf::bounded_geometry_profile(4, 2.0, 1.0, 1.0),
          pf::power_log_profile(3, 1.0, 0.6, 0.3)}) {
        for (double p = 1.05; p < 6.0; p += 0.13) {
            const bool expected = prof.exponent_at_infinity * p / (p - 1.0) > 1.0 + 1e-12;
            CHECK(pf::is_p_hyperbolic(prof, p).hyperbolic == expected);
        }
    }
}

TEST_CASE("alpha exponent of the presets") {
    auto a1 = pf::alpha_exponent(pf::euclidean_profile(3), 3, 2.0, kGrid);
    REQUIRE(a1.has_value());
    CHECK(close(*a1, 2.0 / 3.0, 1e-12));

    auto a2 = pf::alpha_exponent(pf::product_profile(1, 3, 1.0, 1.0), 4, 2.0, kGrid);
    REQUIRE(a2.has_value());
    CHECK(close(*a2, 2.0 / 3.0, 1e-12));  // (k-1)/k with k = 3

    // h(s) = s has critical exponent 1, above the admissible cap
    pf::IsoperimetricProfile linear;
    linear.h = [](double s) { return s; };
    linear.N = 3;
    linear.C_N = 1.0;
    linear.exponent_at_zero = 1.0;
    linear.exponent_at_infinity = 1.0;
    CHECK_FALSE(pf::alpha_exponent(linear, 3, 2.0, kGrid).has_value());

    // paraboloid with mu below (p-1)/p has no admissible alpha
    auto a3 = pf::alpha_exponent(pf::paraboloid_profile(3, 0.5), 3, 2.0, kGrid);
    CHECK_FALSE(a3.has_value());
}

TEST_CASE("euclidean geometry closed forms") {
    auto g = pf::euclidean_geometry(3);
    const double om3 = 4.0 * M_PI / 3.0;
    CHECK(close(g.V(2.0), 8.0 * om3, 1e-14));
    CHECK(close(g.V_inverse(8.0 * om3), 2.0, 1e-14));
    for (double r : {1e-4, 0.3, 1.0, 7.0, 1e5}) {
        CHECK(close(g.V_inverse(g.V(r)), r, 1e-12));
    }
}

TEST_CASE("induced euclidean profile reproduces the preset") {
    for (int N : {3, 5}) {
        auto g = pf::euclidean_geometry(N);
        auto induced = pf::profile_from_geometry(g);
        auto preset = pf::euclidean_profile(N);
        for (double v : kGrid) {
            CHECK(close(induced.h(v), preset.h(v), 1e-12));
        }
        CHECK(close(induced.C_N, preset.C_N, 1e-14));
    }
}

TEST_CASE("product model geometry") {
    const double H = 2.0 * M_PI;
    auto g = pf::product_model_geometry(1, 3, H);

    // V_inverse round trip across the blending window
    for (double r : pf::log_grid(1e-3, 1e3, 61)) {
        CHECK(close(g.V_inverse(g.V(r)), r, 1e-10));
    }
    // strictly increasing V
    double prev = 0.0;
    for (double r : pf::log_grid(1e-4, 1e4, 161)) {
        const double v = g.V(r);
        CHECK(v > prev);
        prev = v;
    }
    // small-radius branch is euclidean
    CHECK(close(g.V(1e-4), specfn::unit_ball_volume(4) * std::pow(1e-4, 4.0), 1e-12));

    // induced profile approaches the exact large-volume coefficient b
    auto induced = pf::profile_from_geometry(g);
    const double b = 3.0 * std::cbrt(specfn::unit_ball_volume(3) * H);
    CHECK(close(induced.coeff_at_infinity, b, 1e-12));
    const double v_big = 1e12;
    CHECK(close(induced.h(v_big), b * std::pow(v_big, 2.0 / 3.0), 1e-10));

    // the induced profile is a valid isoperimetric profile
    CHECK(pf::check_valid(induced, kGrid).pass);

    CHECK_THROWS_AS(pf::product_model_geometry(1, 3, -1.0), DomainError);
}

TEST_CASE("profile/geometry consistency gap") {
    auto g = pf::euclidean_geometry(3);
    CHECK(pf::max_rel_profile_gap(pf::euclidean_profile(3), g, pf::log_grid(1e-6, 1e6, 61)) <
          1e-12);
    CHECK(pf::max_rel_profile_gap(pf::product_profile(1, 2, 1.0, 1.0), g,
                                  pf::log_grid(1e-6, 1e6, 61)) > 0.01);
}
