/* C interface to the rotating-patch toolkit.
 *
 * Every function returns a vs_status. On failure the message of the most
 * recent error on the calling thread is available from
 * vs_last_error_message(). Objects are opaque handles released with their
 * matching *_free function; *_free(NULL) is a no-op.
 */
#ifndef VSTATE_H
#define VSTATE_H

#include <stddef.h>

#if defined(VSTATE_BUILDING_LIBRARY)
#define VS_API __attribute__((visibility("default")))
#else
#define VS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vs_status {
  VS_OK = 0,
  VS_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad enum, malformed text */
  VS_ERR_DOMAIN = 2,           /* parameter outside the mathematical domain */
  VS_ERR_PRECONDITION = 3,     /* documented precondition violated */
  VS_ERR_NO_CONVERGENCE = 4,
  VS_ERR_NUMERICAL = 5, /* degenerate chord, singular matrix, vanishing index */
  VS_ERR_INSUFFICIENT_DATA = 6,
  VS_ERR_OVERFLOW = 7,
  VS_ERR_INTERNAL = 8
} vs_status;

typedef enum vs_family { VS_FAMILY_ELLIPSE = 0, VS_FAMILY_DISK = 1 } vs_family;
typedef enum vs_basis { VS_BASIS_COS = 0, VS_BASIS_SIN = 1 } vs_basis;
typedef enum vs_kernel_kind { VS_KERNEL_EULER = 0, VS_KERNEL_GSQG = 1 } vs_kernel_kind;

VS_API const char* vs_version(void);
VS_API const char* vs_status_name(vs_status status);
/* Thread-local; valid until the next failing call on the same thread. */
VS_API const char* vs_last_error_message(void);

/* ---- owned text ---- */
typedef struct vs_text vs_text;
VS_API const char* vs_text_data(const vs_text* t);
VS_API size_t vs_text_size(const vs_text* t);
VS_API void vs_text_free(vs_text* t);

/* ---- series ---- */
typedef struct vs_series vs_series;
VS_API vs_status vs_series_new(vs_basis basis, const double* coeffs, size_t n, vs_series** out);
VS_API void vs_series_free(vs_series* s);
VS_API vs_basis vs_series_basis(const vs_series* s);
VS_API size_t vs_series_size(const vs_series* s);
/* Copies min(cap, size) coefficients a_1.. into out. */
VS_API vs_status vs_series_coeffs(const vs_series* s, double* out, size_t cap);
VS_API vs_status vs_series_eval(const vs_series* s, double x, double* out);
VS_API vs_status vs_series_to_json(const vs_series* s, vs_text** out);
VS_API vs_status vs_series_to_csv(const vs_series* s, vs_text** out);
VS_API vs_status vs_series_from_json(const char* text, vs_series** out);
VS_API vs_status vs_strip_norm(const vs_series* cos_series, double c, int k, double* out);
VS_API vs_status vs_fit_decay_rate(const vs_series* cos_series, double* out);

/* ---- closed forms and quadrature ---- */
VS_API vs_status vs_poisson_kernel_integral(int k, double r, double* out);
VS_API vs_status vs_log_sin_integral(int k, double* out);
VS_API vs_status vs_log_shifted_cos_integral(int k, double r, double* out);
/* CSV table integral,k,r,closed_form,quadrature,delta; worst_delta may be NULL. */
VS_API vs_status vs_selftest_integrals(size_t n_nodes, vs_text** csv, double* worst_delta);
VS_API vs_status vs_gamma(double x, double* out);

/* ---- linear theory ---- */
VS_API vs_status vs_bracket(int m, double r, double* out);
VS_API vs_status vs_bifurcation_ratio(int m, double tol, double* out);
VS_API vs_status vs_omega_m(int m, double alpha, double* out);
VS_API vs_status vs_k_coeff(int k, double r, double* out);
VS_API vs_status vs_tri_coeffs_csv(double r, size_t n, vs_text** out);
VS_API vs_status vs_apply_df(double r, const vs_series* h, vs_series** out);
VS_API vs_status vs_preimage(int m, double r_m, const vs_series* target, vs_series** out);
VS_API vs_status vs_transversality_index(int m, double r_m, double* out);
VS_API vs_status vs_k_growth_ratio(double r, int n, double* out);

typedef struct vs_kernel vs_kernel;
typedef struct vs_kernel_info {
  double r, z, lambda_plus, lambda_minus, row_defect;
  size_t k;     /* index of the bifurcating mode within its class */
  int odd;      /* 1: odd frequencies 2p-1, 0: even frequencies 2p */
  size_t n_cp;  /* number of coefficients c_p */
} vs_kernel_info;
VS_API vs_status vs_kernel_generator(int m, double r_m, size_t n, vs_kernel** out);
VS_API void vs_kernel_free(vs_kernel* g);
VS_API vs_status vs_kernel_get_info(const vs_kernel* g, vs_kernel_info* out);
VS_API vs_status vs_kernel_cp(const vs_kernel* g, double* out, size_t cap);
VS_API vs_status vs_kernel_series(const vs_kernel* g, size_t n_modes, vs_series** out);
VS_API vs_status vs_kernel_to_json(const vs_kernel* g, size_t n_modes, vs_text** out);

/* ---- nonlinear functionals ---- */
typedef struct vs_patch_config {
  vs_family family;
  double jump;          /* default -1 */
  double alpha;         /* disk only; 0 for the log kernel */
  size_t n_quad;        /* default 1024 */
  size_t n_graded;      /* default 1024 */
  size_t n_collocation; /* 0: automatic */
} vs_patch_config;
VS_API void vs_patch_config_default(vs_patch_config* cfg);
/* param is r (ellipse) or the angular velocity (disk); R is the perturbation.
 * residual receives the sine coefficients; sup_norm may be NULL. */
VS_API vs_status vs_eval_F(const vs_patch_config* cfg, double param, const vs_series* R, vs_series** residual,
                           double* sup_norm);
VS_API vs_status vs_gateaux_fd(const vs_patch_config* cfg, double param, const vs_series* R, const vs_series* h,
                               double step, vs_series** out);
VS_API vs_status vs_curvature_min(vs_family family, const vs_series* R, double base, double* out);

/* ---- continuation ---- */
typedef struct vs_continuation_config {
  double newton_tol;
  int max_newton_iters;
  double epsilon_step;
  int n_steps;
  size_t n_modes;
  vs_patch_config patch;
} vs_continuation_config;
VS_API void vs_continuation_config_default(vs_continuation_config* cfg);

typedef struct vs_branch vs_branch;
typedef struct vs_branch_point_info {
  double param, epsilon, residual, sup_residual, decay_rate, min_curvature, min_chord;
  int newton_iters;
} vs_branch_point_info;
/* On a failed continuation step returns VS_ERR_NO_CONVERGENCE and still sets
 * *out to the points accepted before the failure. */
VS_API vs_status vs_trace_branch(vs_family family, int m, double alpha, const vs_continuation_config* cfg,
                                 vs_branch** out);
/* Single corrected point at amplitude eps0. */
VS_API vs_status vs_branch_switch(vs_family family, int m, double alpha, double eps0,
                                  const vs_continuation_config* cfg, vs_branch** out);
VS_API void vs_branch_free(vs_branch* b);
VS_API size_t vs_branch_size(const vs_branch* b);
VS_API vs_status vs_branch_point(const vs_branch* b, size_t i, vs_branch_point_info* out);
VS_API vs_status vs_branch_shape(const vs_branch* b, size_t i, vs_series** out);
/* One JSON object per line. */
VS_API vs_status vs_branch_to_jsonl(const vs_branch* b, vs_text** out);

/* ---- contour dynamics ---- */
typedef struct vs_rotation_request {
  vs_family family;
  const vs_series* shape; /* perturbation R; NULL for none */
  double base;            /* r for the ellipse, ignored for the disk */
  double omega_expected;  /* reference angular velocity */
  vs_kernel_kind kernel;
  double alpha;           /* gSQG only */
  double jump;            /* default -1 */
  size_t n_nodes;
  size_t n_graded;
  double dt;
  double t_final;
} vs_rotation_request;
typedef struct vs_rotation_report {
  double omega_fit, omega_expected, shape_error, exact_discrepancy, area_drift, min_arc_chord, t_final;
  int steps;
} vs_rotation_report;
VS_API void vs_rotation_request_default(vs_rotation_request* req);
/* diagnostics (per-step JSON lines) and final_contour (CSV x,z1,z2) may be NULL. */
VS_API vs_status vs_verify_rotation(const vs_rotation_request* req, vs_rotation_report* report,
                                    vs_text** diagnostics, vs_text** final_contour);

#ifdef __cplusplus
}
#endif

#endif /* VSTATE_H */
