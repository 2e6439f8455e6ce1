/* isoconst - Sobolev/Hardy constants from isoperimetric profiles.
 *
 * C interface of the shared library.  All objects are opaque handles; every
 * fallible call returns an isoc_status and writes its result through out
 * parameters.  On failure isoc_last_error() returns a thread-local message.
 */
#ifndef ISOCONST_H
#define ISOCONST_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum isoc_status {
    ISOC_OK = 0,
    ISOC_ERROR_INVALID = 1,   /* argument outside its domain / bad config */
    ISOC_ERROR_DIVERGENT = 2, /* divergent integral or non-hyperbolic profile */
    ISOC_ERROR_EVAL = 3,      /* non-finite values during evaluation */
    ISOC_ERROR_ACCURACY = 4,  /* refinement stopped before the tolerance */
    ISOC_ERROR_INTERNAL = 5
} isoc_status;

typedef struct isoc_profile isoc_profile;
typedef struct isoc_geometry isoc_geometry;
typedef struct isoc_report isoc_report;

const char* isoc_version(void);
const char* isoc_last_error(void);

/* ---- profiles ---------------------------------------------------------- */
/* Pass C_N <= 0 to use the family default normalization. */

isoc_status isoc_profile_euclidean(int N, isoc_profile** out);
isoc_status isoc_profile_product(int m, int k, double a, double b, double C_N,
                                 isoc_profile** out);
isoc_status isoc_profile_paraboloid(int N, double beta, double a, double b, double C_N,
                                    isoc_profile** out);
isoc_status isoc_profile_bounded_geometry(int N, double nu, double theta, double v0,
                                          isoc_profile** out);
isoc_status isoc_profile_power_log(int N, double gamma, double k, double z, double C_N,
                                   isoc_profile** out);
isoc_status isoc_profile_from_geometry(const isoc_geometry* g, isoc_profile** out);
void isoc_profile_free(isoc_profile* prof);

isoc_status isoc_profile_eval(const isoc_profile* prof, double s, double* h_out);
isoc_status isoc_profile_weight(const isoc_profile* prof, double s, double* w_out);
/* Grid check (log grid [grid_lo, grid_hi], `points` entries) that h is
 * increasing and w nondecreasing; *pass_out = 1 when no pair violates. */
isoc_status isoc_profile_check_valid(const isoc_profile* prof, double grid_lo, double grid_hi,
                                     int points, int* pass_out);
isoc_status isoc_profile_is_p_hyperbolic(const isoc_profile* prof, double p,
                                         int* hyperbolic_out, double* integral_out);
/* *has_alpha = 0 when no admissible exponent exists. */
isoc_status isoc_profile_alpha_exponent(const isoc_profile* prof, double p, int* has_alpha,
                                        double* alpha_out);

/* ---- model geometries --------------------------------------------------- */

isoc_status isoc_geometry_euclidean(int N, isoc_geometry** out);
/* match_half_decades <= 0 selects the default blending window. */
isoc_status isoc_geometry_product_model(int m, int k, double cross_volume,
                                        double match_half_decades, isoc_geometry** out);
void isoc_geometry_free(isoc_geometry* g);

isoc_status isoc_geometry_volume(const isoc_geometry* g, double r, double* out);
isoc_status isoc_geometry_area(const isoc_geometry* g, double r, double* out);
isoc_status isoc_geometry_volume_inverse(const isoc_geometry* g, double v, double* out);

/* ---- closed forms -------------------------------------------------------- */
/* These return NaN on domain errors (details via isoc_last_error). */

double isoc_gamma(double x);
double isoc_beta(double a, double b);
double isoc_unit_ball_volume(int N);
double isoc_k_qp(double q, double p);
double isoc_sobolev_best_constant(int N, double p);

isoc_status isoc_b1_bound_power_like(int N, double p, double alpha, double C_N, double* out);
isoc_status isoc_c2_bound_general(double p, double alpha, double c0, double c1, double* out);
isoc_status isoc_product_b_coefficient(int k, double cross_volume, double* out);

/* ---- drivers -------------------------------------------------------------
 * Each driver produces a report handle carrying canonical JSON (and CSV).
 * When a constants run fails with ISOC_ERROR_DIVERGENT a diagnostic report
 * is still produced.  rel_tol <= 0 selects the default (1e-8).
 */

isoc_status isoc_run_constants(const isoc_profile* prof, const isoc_geometry* g_or_null,
                               double p, const double* q_or_null, double rel_tol,
                               isoc_report** out);

isoc_status isoc_run_hyperbolic(const isoc_profile* prof, double p, isoc_report** out);

/* inequality: "sobolev" | "hardy" | "hardy-sobolev".
 * family: "tent" | "bump" | "talenti" | "power_cutoff" | "random_monotone" |
 *         "random_nonmonotone".
 * The report carries one row per function and an overall all_pass flag. */
isoc_status isoc_run_verify(const isoc_profile* prof, const isoc_geometry* g, double p,
                            const double* q_or_null, const char* inequality,
                            const char* family, int budget, unsigned long long seed,
                            double rel_tol, isoc_report** out);

/* pair: "sobolev" | "hardy" (hardy requires a geometry).
 * family: "indicators" | "exponentials" | "powers" | "random_steps". */
isoc_status isoc_run_bliss(const isoc_profile* prof, const isoc_geometry* g_or_null, double p,
                           const char* pair, const char* family, int budget,
                           unsigned long long seed, isoc_report** out);

/* csv: text with header "x,value"; cells are [x_{i-1}, x_i) from x_0 = 0.
 * p must be a positive integer for the exact-arithmetic path. */
isoc_status isoc_run_rearrange_csv(const char* csv, long p, isoc_report** out);

/* ---- reports -------------------------------------------------------------- */

const char* isoc_report_json(const isoc_report* rep); /* canonical, no timestamp */
const char* isoc_report_csv(const isoc_report* rep);
/* JSON-pointer lookups, e.g. "/B1" or "/rows/0/ratio". */
isoc_status isoc_report_number(const isoc_report* rep, const char* pointer, double* out);
isoc_status isoc_report_flag(const isoc_report* rep, const char* pointer, int* out);
void isoc_report_free(isoc_report* rep);

#ifdef __cplusplus
}
#endif

#endif /* ISOCONST_H */
