#include "isoconst.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <string>

#include "bliss.hpp"
#include "common.hpp"
#include "constants.hpp"
#include "profile.hpp"
#include "report.hpp"
#include "specfn.hpp"
#include "verify.hpp"

struct isoc_profile {
    isoc::profile::IsoperimetricProfile value;
};

struct isoc_geometry {
    isoc::profile::ModelGeometry value;
};

struct isoc_report {
    isoc::report::json doc;
    std::string json_text;
    std::string csv_text;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

isoc_status to_status(const std::exception& e) {
    set_error(e.what());
    if (dynamic_cast<const isoc::DomainError*>(&e)) return ISOC_ERROR_INVALID;
    if (dynamic_cast<const isoc::DivergenceError*>(&e)) return ISOC_ERROR_DIVERGENT;
    if (dynamic_cast<const isoc::EvaluationError*>(&e)) return ISOC_ERROR_EVAL;
    if (dynamic_cast<const isoc::AccuracyError*>(&e)) return ISOC_ERROR_ACCURACY;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return ISOC_ERROR_INVALID;
    if (dynamic_cast<const nlohmann::detail::exception*>(&e)) return ISOC_ERROR_INVALID;
    return ISOC_ERROR_INTERNAL;
}

template <typename F>
isoc_status guarded(F&& body) {
    try {
        body();
        return ISOC_OK;
    } catch (const std::exception& e) {
        return to_status(e);
    } catch (...) {
        set_error("unknown error");
        return ISOC_ERROR_INTERNAL;
    }
}

template <typename F>
double guarded_value(F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        set_error(e.what());
        return std::nan("");
    }
}

isoc_report* wrap_report(isoc::report::json doc) {
    auto* rep = new isoc_report;
    rep->doc = std::move(doc);
    rep->json_text = rep->doc.dump(2);
    rep->csv_text = isoc::report::to_csv(rep->doc);
    return rep;
}

double default_tol(double rel_tol) { return rel_tol > 0.0 ? rel_tol : 1e-8; }

}  // namespace

extern "C" {

const char* isoc_version(void) { return "1.0.0"; }

const char* isoc_last_error(void) { return g_last_error.c_str(); }

isoc_status isoc_profile_euclidean(int N, isoc_profile** out) {
    return guarded([&] { *out = new isoc_profile{isoc::profile::euclidean_profile(N)}; });
}

isoc_status isoc_profile_product(int m, int k, double a, double b, double C_N,
                                 isoc_profile** out) {
    return guarded([&] {
        std::optional<double> cn;
        if (C_N > 0.0) cn = C_N;
        *out = new isoc_profile{isoc::profile::product_profile(m, k, a, b, cn)};
    });
}

isoc_status isoc_profile_paraboloid(int N, double beta, double a, double b, double C_N,
                                    isoc_profile** out) {
    return guarded([&] {
        std::optional<double> cn;
        if (C_N > 0.0) cn = C_N;
        *out = new isoc_profile{isoc::profile::paraboloid_profile(N, beta, a, b, cn)};
    });
}

isoc_status isoc_profile_bounded_geometry(int N, double nu, double theta, double v0,
                                          isoc_profile** out) {
    return guarded([&] {
        *out = new isoc_profile{isoc::profile::bounded_geometry_profile(N, nu, theta, v0)};
    });
}

isoc_status isoc_profile_power_log(int N, double gamma, double k, double z, double C_N,
                                   isoc_profile** out) {
    return guarded([&] {
        std::optional<double> cn;
        if (C_N > 0.0) cn = C_N;
        *out = new isoc_profile{isoc::profile::power_log_profile(N, gamma, k, z, cn)};
    });
}

isoc_status isoc_profile_from_geometry(const isoc_geometry* g, isoc_profile** out) {
    return guarded([&] {
        isoc::require(g != nullptr, "null geometry");
        *out = new isoc_profile{isoc::profile::profile_from_geometry(g->value)};
    });
}

void isoc_profile_free(isoc_profile* prof) { delete prof; }

isoc_status isoc_profile_eval(const isoc_profile* prof, double s, double* h_out) {
    return guarded([&] {
        isoc::require(prof != nullptr, "null profile");
        *h_out = prof->value(s);
    });
}

isoc_status isoc_profile_weight(const isoc_profile* prof, double s, double* w_out) {
    return guarded([&] {
        isoc::require(prof != nullptr, "null profile");
        *w_out = isoc::profile::weight_w(prof->value, s);
    });
}

isoc_status isoc_profile_check_valid(const isoc_profile* prof, double grid_lo, double grid_hi,
                                     int points, int* pass_out) {
    return guarded([&] {
        isoc::require(prof != nullptr, "null profile");
        auto grid = isoc::profile::log_grid(grid_lo, grid_hi, points);
        *pass_out = isoc::profile::check_valid(prof->value, grid).pass ? 1 : 0;
    });
}

isoc_status isoc_profile_is_p_hyperbolic(const isoc_profile* prof, double p,
                                         int* hyperbolic_out, double* integral_out) {
    return guarded([&] {
        isoc::require(prof != nullptr, "null profile");
        auto res = isoc::profile::is_p_hyperbolic(prof->value, p);
        *hyperbolic_out = res.hyperbolic ? 1 : 0;
        *integral_out = res.integral;
    });
}

isoc_status isoc_profile_alpha_exponent(const isoc_profile* prof, double p, int* has_alpha,
                                        double* alpha_out) {
    return guarded([&] {
        isoc::require(prof != nullptr, "null profile");
        auto grid = isoc::profile::log_grid(1e-8, 1e8, 401);
        auto alpha = isoc::profile::alpha_exponent(prof->value, prof->value.N, p, grid);
        *has_alpha = alpha ? 1 : 0;
        *alpha_out = alpha.value_or(0.0);
    });
}

isoc_status isoc_geometry_euclidean(int N, isoc_geometry** out) {
    return guarded([&] { *out = new isoc_geometry{isoc::profile::euclidean_geometry(N)}; });
}

isoc_status isoc_geometry_product_model(int m, int k, double cross_volume,
                                        double match_half_decades, isoc_geometry** out) {
    return guarded([&] {
        const double w = match_half_decades > 0.0 ? match_half_decades : 0.5;
        *out = new isoc_geometry{isoc::profile::product_model_geometry(m, k, cross_volume, w)};
    });
}

void isoc_geometry_free(isoc_geometry* g) { delete g; }

isoc_status isoc_geometry_volume(const isoc_geometry* g, double r, double* out) {
    return guarded([&] {
        isoc::require(g != nullptr, "null geometry");
        *out = g->value.V(r);
    });
}

isoc_status isoc_geometry_area(const isoc_geometry* g, double r, double* out) {
    return guarded([&] {
        isoc::require(g != nullptr, "null geometry");
        *out = g->value.A(r);
    });
}

isoc_status isoc_geometry_volume_inverse(const isoc_geometry* g, double v, double* out) {
    return guarded([&] {
        isoc::require(g != nullptr, "null geometry");
        *out = g->value.V_inverse(v);
    });
}

double isoc_gamma(double x) {
    return guarded_value([&] { return isoc::specfn::gamma(x); });
}

double isoc_beta(double a, double b) {
    return guarded_value([&] { return isoc::specfn::beta(a, b); });
}

double isoc_unit_ball_volume(int N) {
    return guarded_value([&] { return isoc::specfn::unit_ball_volume(N); });
}

double isoc_k_qp(double q, double p) {
    return guarded_value([&] { return isoc::specfn::k_qp(q, p); });
}

double isoc_sobolev_best_constant(int N, double p) {
    return guarded_value([&] { return isoc::specfn::sobolev_best_constant(N, p); });
}

isoc_status isoc_b1_bound_power_like(int N, double p, double alpha, double C_N, double* out) {
    return guarded([&] { *out = isoc::constants::b1_bound_power_like(N, p, alpha, C_N); });
}

isoc_status isoc_c2_bound_general(double p, double alpha, double c0, double c1, double* out) {
    return guarded([&] { *out = isoc::constants::c2_bound_general(p, alpha, c0, c1); });
}

isoc_status isoc_product_b_coefficient(int k, double cross_volume, double* out) {
    return guarded([&] { *out = isoc::constants::product_b_coefficient(k, cross_volume); });
}

isoc_status isoc_run_constants(const isoc_profile* prof, const isoc_geometry* g_or_null,
                               double p, const double* q_or_null, double rel_tol,
                               isoc_report** out) {
    return guarded([&] {
        isoc::require(prof != nullptr, "null profile");
        std::optional<double> q;
        if (q_or_null) q = *q_or_null;
        auto rep = isoc::constants::compute_constants(
            prof->value, g_or_null ? &g_or_null->value : nullptr, p, q, default_tol(rel_tol));
        *out = wrap_report(isoc::report::constants_report(rep));
        if (!rep.hyperbolic)
            throw isoc::DivergenceError("profile is not p-hyperbolic for p=" +
                                        std::to_string(p));
    });
}

isoc_status isoc_run_hyperbolic(const isoc_profile* prof, double p, isoc_report** out) {
    return guarded([&] {
        isoc::require(prof != nullptr, "null profile");
        auto res = isoc::profile::is_p_hyperbolic(prof->value, p);
        *out = wrap_report(isoc::report::hyperbolicity_report(prof->value, p, res));
    });
}

isoc_status isoc_run_verify(const isoc_profile* prof, const isoc_geometry* g, double p,
                            const double* q_or_null, const char* inequality,
                            const char* family, int budget, unsigned long long seed,
                            double rel_tol, isoc_report** out) {
    return guarded([&] {
        isoc::require(prof != nullptr && g != nullptr, "verify requires profile and geometry");
        isoc::require(inequality != nullptr && family != nullptr,
                      "verify requires inequality and family names");
        auto which = isoc::verify::inequality_from_name(inequality);
        double q = 0.0;
        if (which == isoc::verify::Inequality::hardy_sobolev) {
            isoc::require(q_or_null != nullptr, "hardy-sobolev requires q");
            q = *q_or_null;
            isoc::require(q < p, "hardy-sobolev requires q < p");
        }
        auto ctx = isoc::verify::make_context(prof->value, g->value, p,
                                              rel_tol > 0.0 ? rel_tol : 1e-6);
        auto sweep = isoc::verify::verify_sweep(ctx, which,
                                                q, isoc::verify::family_from_name(family),
                                                budget, seed);
        *out = wrap_report(isoc::report::verify_report(sweep, inequality, family, budget, seed,
                                                       ctx.C1, ctx.C2));
    });
}

isoc_status isoc_run_bliss(const isoc_profile* prof, const isoc_geometry* g_or_null, double p,
                           const char* pair, const char* family, int budget,
                           unsigned long long seed, isoc_report** out) {
    return guarded([&] {
        isoc::require(prof != nullptr, "null profile");
        isoc::require(pair != nullptr && family != nullptr,
                      "bliss requires pair and family names");
        const std::string pair_s = pair;
        isoc::bliss::MeasurePair m = [&] {
            if (pair_s == "sobolev") return isoc::bliss::measures_for_sobolev(prof->value, p);
            if (pair_s == "hardy") {
                isoc::require(g_or_null != nullptr, "hardy measure pair requires a geometry");
                return isoc::bliss::measures_for_hardy(prof->value, g_or_null->value, p);
            }
            throw isoc::DomainError("unknown measure pair: " + pair_s);
        }();
        auto rep = isoc::bliss::bracket_optimal_constant(
            m, isoc::bliss::family_from_name(family), budget, seed);
        *out = wrap_report(isoc::report::bliss_report(rep, pair_s, family, budget, seed));
    });
}

isoc_status isoc_run_rearrange_csv(const char* csv, long p, isoc_report** out) {
    return guarded([&] {
        isoc::require(csv != nullptr, "null csv text");
        isoc::require(p >= 1, "rearrange requires integer p >= 1");
        auto input = isoc::report::parse_step_csv(csv);
        isoc::report::RearrangeOutcome oc{
            input, isoc::rearrange::decreasing_rearrangement(input),
            isoc::rearrange::check_cavalieri(input, p), p, true};
        for (size_t i = 1; i < oc.rearranged.values.size(); ++i)
            if (oc.rearranged.values[i] > oc.rearranged.values[i - 1]) oc.monotone = false;
        *out = wrap_report(isoc::report::rearrange_report(oc));
    });
}

const char* isoc_report_json(const isoc_report* rep) {
    return rep ? rep->json_text.c_str() : "";
}

const char* isoc_report_csv(const isoc_report* rep) {
    return rep ? rep->csv_text.c_str() : "";
}

isoc_status isoc_report_number(const isoc_report* rep, const char* pointer, double* out) {
    return guarded([&] {
        isoc::require(rep != nullptr && pointer != nullptr, "null report access");
        const auto& v = rep->doc.at(isoc::report::json::json_pointer(pointer));
        isoc::require(v.is_number(), std::string("report field is not a number: ") + pointer);
        *out = v.get<double>();
    });
}

isoc_status isoc_report_flag(const isoc_report* rep, const char* pointer, int* out) {
    return guarded([&] {
        isoc::require(rep != nullptr && pointer != nullptr, "null report access");
        const auto& v = rep->doc.at(isoc::report::json::json_pointer(pointer));
        isoc::require(v.is_boolean(), std::string("report field is not a flag: ") + pointer);
        *out = v.get<bool>() ? 1 : 0;
    });
}

void isoc_report_free(isoc_report* rep) { delete rep; }

}  // extern "C"
