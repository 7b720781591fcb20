#ifndef LIOUVILLE_H
#define LIOUVILLE_H

/* C interface to the Liouville laboratory: closed-form blow-up families for
 * -lap(u) = V e^u on the plane, the Dirichlet Green kernel of a disk, radial
 * and 2D solvers, and the prepackaged experiment scenarios.
 *
 * Every function returns a status code; llab_last_error() holds the message
 * of the most recent failure on the calling thread.  Out-parameters are only
 * written on LLAB_OK.  Handles are released with their matching _free; NULL
 * handles and NULL required pointers yield LLAB_INPUT.  Distinct handles may
 * be used concurrently.
 */

#ifndef LLAB_API
#if defined(__GNUC__) || defined(__clang__)
#define LLAB_API __attribute__((visibility("default")))
#else
#define LLAB_API
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum llab_status {
    LLAB_OK = 0,
    LLAB_INPUT = 1,       /* malformed descriptor, config, or argument */
    LLAB_DOMAIN = 2,      /* argument outside the documented domain */
    LLAB_SINGULARITY = 3, /* evaluation at a non-integrable point */
    LLAB_TOLERANCE = 4,   /* requested accuracy not reached */
    LLAB_NO_SOLUTION = 5, /* boundary value unreachable on the branch */
    LLAB_BLOWUP = 6,      /* solution left the representable range */
    LLAB_IO = 7,          /* filesystem failure */
    LLAB_INTERNAL = 8     /* any other failure */
} llab_status;

/* Message of the most recent failing call on this thread; empty string when
 * that call succeeded.  Valid until the next library call on the thread. */
LLAB_API const char* llab_last_error(void);

/* Frees a string returned through a char** out-parameter. */
LLAB_API void llab_string_free(char* s);

/* ---- closed-form radial profiles -------------------------------------- */

/* Descriptor grammar: "bubble:i", "remark:mu", "remark-literal:mu",
 * "shafrir-piecewise:beta", "shafrir-scaled:i:beta", "annulus:i". */
typedef struct llab_profile llab_profile;

LLAB_API llab_status llab_profile_create(const char* descriptor, llab_profile** out);
LLAB_API void llab_profile_free(llab_profile* p);

/* u, du, d2u at radius r; any of the value pointers may be NULL. */
LLAB_API llab_status llab_profile_eval(const llab_profile* p, double r, double* u, double* du,
                                       double* d2u);

/* -u'' - u'/r - V(r) e^u, the defect of the profile as a solution. */
LLAB_API llab_status llab_profile_residual(const llab_profile* p, double r, double* out);

/* Closed-form integral of V e^u over the centered ball of radius R
 * (intersected with the profile domain). */
LLAB_API llab_status llab_profile_mass(const llab_profile* p, double R, double* out);

/* ---- Dirichlet Green kernel of a disk --------------------------------- */

typedef struct llab_green llab_green;

LLAB_API llab_status llab_green_create(double center_x, double center_y, double radius,
                                       llab_green** out);
LLAB_API void llab_green_free(llab_green* g);

/* G(x, y); both points interior, x != y. */
LLAB_API llab_status llab_green_eval(const llab_green* g, double x0, double x1, double y0,
                                     double y1, double* out);

/* u(x) = int G(x,y) f(y) dy + int P(x,s) g(s) ds, the solution of
 * -lap(u) = f with boundary trace g.  Density grammar: "const:c",
 * "profile:<profile descriptor>", "field:<path>"; trace grammar: "const:c",
 * "x1", "profile:<descriptor>". */
LLAB_API llab_status llab_green_represent(const llab_green* g, const char* density,
                                          const char* trace, double x0, double x1, double* out);

/* ---- sampled fields ---------------------------------------------------- */

typedef struct llab_field llab_field;

LLAB_API llab_status llab_field_load(const char* path, llab_field** out);
LLAB_API llab_status llab_field_save(const llab_field* f, const char* path);
LLAB_API void llab_field_free(llab_field* f);

/* Interpolated value at (x0, x1); radial fields use r = |(x0, x1)|. */
LLAB_API llab_status llab_field_eval(const llab_field* f, double x0, double x1, double* out);

/* ---- radial solvers ----------------------------------------------------- */

/* Weight grammar: "const:c", "profile:<descriptor>" (the profile's V). */

/* Integrates u'' + u'/r + V e^u = 0 outward from u(0) = u0, u'(0) = 0 on
 * n nodes over [0, r_max]. */
LLAB_API llab_status llab_solve_radial_ivp(double u0, const char* weight, double r_max, int n,
                                           llab_field** out);

/* Shooting solve of the boundary value problem u(r_max) = boundary_value;
 * high_branch selects the larger center value when two exist.  Reports the
 * center value found and, optionally, the solution samples. */
LLAB_API llab_status llab_solve_radial_bvp(double boundary_value, const char* weight,
                                           int high_branch, double r_max, int n, double* u0,
                                           llab_field** out);

/* Radial Green value at r_eval of -lap + eps on the unit disk, zero boundary
 * data, pole at the origin.  Eps grammar: "const:c", "bubble:i"
 * (1 + |grad u_i|^2). */
LLAB_API llab_status llab_green_coercive(const char* eps, double r_eval, int n, double* out);

/* ---- two-bubble field ---------------------------------------------------- */

/* Two peaks of common level m_tilde at mutual distance 1/sqrt(m_tilde),
 * sampled on [-1.05, 1.05]^2 with nx nodes per axis. */
LLAB_API llab_status llab_build_two_bubble(double m_tilde, int nx, llab_field** out);

/* ---- scenarios ----------------------------------------------------------- */

/* Newline-separated list of scenario names; free with llab_string_free. */
LLAB_API llab_status llab_scenario_names(char** out);

/* Runs one scenario.  config_path may be NULL (defaults) or a key=value
 * file; out_dir may be NULL (nothing written); format is "csv" or "text".
 * claims_hold receives 1 when every claim held, 0 otherwise; if violations
 * is non-NULL it receives a newline-separated report (empty string when all
 * claims held), freed with llab_string_free.  A violated claim is a result,
 * not an error: the call still returns LLAB_OK. */
LLAB_API llab_status llab_run_scenario(const char* scenario, const char* config_path,
                                       const char* out_dir, const char* format, int* claims_hold,
                                       char** violations);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LIOUVILLE_H */
