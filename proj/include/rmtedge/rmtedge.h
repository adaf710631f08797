/*
 * rmtedge: edge statistics of GUE and real white Wishart eigenvalues.
 *
 * Plain C interface to the numerical core. Every function returns an
 * rmte_status; results are written through out-pointers only on RMTE_OK.
 * After a failure, rmte_last_error() returns a message for the calling
 * thread. Opaque handles are created by *_create / computing functions and
 * released with the matching *_destroy; destroying NULL is a no-op.
 */
#ifndef RMTEDGE_RMTEDGE_H
#define RMTEDGE_RMTEDGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(RMTEDGE_BUILDING_LIBRARY)
#define RMTEDGE_API __attribute__((visibility("default")))
#else
#define RMTEDGE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rmte_status {
  RMTE_OK = 0,
  RMTE_ERR_ARGUMENT = 1,    /* malformed call: bad sizes, N > n, ... */
  RMTE_ERR_DOMAIN = 2,      /* argument outside the function's domain */
  RMTE_ERR_CONVERGENCE = 3, /* refinement did not reach the tolerance */
  RMTE_ERR_NUMERICAL = 4,   /* eigensolver failure, kernel eigenvalue >= 1 */
  RMTE_ERR_NULL = 5,        /* required pointer was NULL */
  RMTE_ERR_INTERNAL = 6
} rmte_status;

RMTEDGE_API const char* rmte_version(void);
RMTEDGE_API const char* rmte_status_name(rmte_status status);
RMTEDGE_API const char* rmte_last_error(void);

/* ---- special functions ------------------------------------------------ */

RMTEDGE_API rmte_status rmte_airy_ai(double x, double* out);
RMTEDGE_API rmte_status rmte_airy_ai_prime(double x, double* out);
/* int_x^inf Ai(z) dz */
RMTEDGE_API rmte_status rmte_airy_tail(double x, double* out);
RMTEDGE_API rmte_status rmte_gamma(double x, double* out);
/* phi_k(y) = mantissa * 2^exponent, orthonormal Hermite function. */
RMTEDGE_API rmte_status rmte_hermite_phi(double y, int k, double* mantissa, int* exponent);

/* ---- kernels ---------------------------------------------------------- */

typedef struct rmte_kernel rmte_kernel;

/* S_N(x, y) = sum_{k<N} phi_k(x) phi_k(y), bulk edge sqrt(2N). */
RMTEDGE_API rmte_status rmte_kernel_create_gue(int N, rmte_kernel** out);
/* Airy kernel K_A. */
RMTEDGE_API rmte_status rmte_kernel_create_airy(rmte_kernel** out);
RMTEDGE_API void rmte_kernel_destroy(rmte_kernel* kernel);
RMTEDGE_API rmte_status rmte_kernel_eval(const rmte_kernel* kernel, double x, double y, double* out);
RMTEDGE_API rmte_status rmte_kernel_eval_diag(const rmte_kernel* kernel, double x, double* out);
/* K_1(x, x), the real-Wishart limiting one-point density; x >= -10. */
RMTEDGE_API rmte_status rmte_wishart_limit_diag(double x, double* out);

/* ---- counting distribution ------------------------------------------- */

typedef struct rmte_count_dist rmte_count_dist;

/* P(exactly k points in (window_start, inf)), k = 0..k_max. */
RMTEDGE_API rmte_status rmte_counting_distribution(const rmte_kernel* kernel, double window_start,
                                                   int k_max, double tol, rmte_count_dist** out);
RMTEDGE_API void rmte_count_dist_destroy(rmte_count_dist* dist);
RMTEDGE_API rmte_status rmte_count_dist_k_max(const rmte_count_dist* dist, int* k_max);
RMTEDGE_API rmte_status rmte_count_dist_prob(const rmte_count_dist* dist, int k, double* out);
/* sum_k k p(k) */
RMTEDGE_API rmte_status rmte_count_dist_mean(const rmte_count_dist* dist, double* out);
RMTEDGE_API rmte_status rmte_count_dist_info(const rmte_count_dist* dist, int* grid_size,
                                             double* error_estimate, int* clamped);

/* ---- tail sums and scalings ------------------------------------------ */

RMTEDGE_API rmte_status rmte_cq_closed(double q, double* out);
/* single: (q+1)^{-1} int x^{q+1} Ai^2; double_integral: int x^q K_A(x,x). */
RMTEDGE_API rmte_status rmte_cq_quadrature(double q, double* single, double* double_integral);
/* E sum (lambda_i - 2)_+^q for GUE(N) in the semicircle scaling. */
RMTEDGE_API rmte_status rmte_gue_expected_tailsum(int N, double q, double tol, double* out);
/* integral = int_s^inf (x - s)^q K_1(x,x) dx, prefactor = tau(gamma)^q. */
RMTEDGE_API rmte_status rmte_wishart_limit_tailsum(double gamma, double q, double s, double tol,
                                                   double* integral, double* prefactor);

typedef struct rmte_wishart_constant {
  double airy_part;     /* int_0^inf K_A(x,x) dx */
  double boundary_part; /* int_0^inf Ai(x)(1 - int_x^inf Ai)/2 dx */
  double total;         /* int_0^inf K_1(x,x) dx */
} rmte_wishart_constant;
RMTEDGE_API rmte_status rmte_wishart_c0(double tol, rmte_wishart_constant* out);

typedef struct rmte_gamma_functions {
  double gamma;
  double lambda;       /* (1 + sqrt g)^2 */
  double lambda_prime; /* 1 + 1/sqrt g */
  double tau;          /* sqrt g (1 + sqrt g)^{4/3} */
  double sigma;        /* g (1 + sqrt g)^{1/3} */
} rmte_gamma_functions;
RMTEDGE_API rmte_status rmte_gamma_functions_eval(double gamma, rmte_gamma_functions* out);

typedef enum rmte_ensemble_kind { RMTE_GUE = 0, RMTE_WISHART = 1 } rmte_ensemble_kind;

typedef struct rmte_edge_scaling {
  rmte_ensemble_kind ensemble;
  int N;
  int n;
  double mu;
  double scale;
  double gamma_N;
} rmte_edge_scaling;
RMTEDGE_API rmte_status rmte_edge_scaling_gue(int N, rmte_edge_scaling* out);
RMTEDGE_API rmte_status rmte_edge_scaling_wishart(int N, int n, rmte_edge_scaling* out);
/* (n lambda(c_N) - mu_N) / sigma_N */
RMTEDGE_API rmte_status rmte_delta_N(double c_N, const rmte_edge_scaling* scaling, double* out);

/* ---- Monte Carlo ------------------------------------------------------ */

typedef struct rmte_ensemble {
  rmte_ensemble_kind kind;
  int N;
  int n; /* Wishart only */
} rmte_ensemble;

typedef struct rmte_mc_estimate {
  double mean;
  double std_error;
  int64_t samples;
  uint64_t seed;
} rmte_mc_estimate;

/* Bulk interval used by rmte_mc_both_edges_inside. */
RMTEDGE_API rmte_status rmte_bulk_interval(const rmte_ensemble* ensemble, double* lower, double* upper);
/* All N eigenvalues (descending) of draw `stream` under `seed`; capacity >= N. */
RMTEDGE_API rmte_status rmte_sample_eigenvalues(const rmte_ensemble* ensemble, uint64_t seed,
                                                uint64_t stream, double* out, size_t capacity);
RMTEDGE_API rmte_status rmte_mc_expected_tailsum(const rmte_ensemble* ensemble, double q,
                                                 double window_start, int64_t samples,
                                                 uint64_t seed, int workers, rmte_mc_estimate* out);
RMTEDGE_API rmte_status rmte_mc_both_edges_inside(const rmte_ensemble* ensemble, int64_t samples,
                                                  uint64_t seed, int workers, rmte_mc_estimate* out);

/* ---- spiked model ----------------------------------------------------- */

typedef enum rmte_shrinker { RMTE_SHRINK_LINEAR = 0, RMTE_SHRINK_ETA_STAR = 1 } rmte_shrinker;

typedef struct rmte_spiked_config {
  const int* p_list;
  size_t p_count;
  double gamma; /* n = round(p / gamma) */
  const double* spikes;
  size_t spike_count;
  rmte_shrinker shrinker;
  double q;
  int64_t samples;
  uint64_t seed;
  int dense; /* nonzero: dense sample covariance with per-draw interlacing check */
  int workers;
} rmte_spiked_config;

typedef struct rmte_spiked_row {
  int p;
  int n;
  int rank;
  int64_t samples;
  double mean_gap;
  double gap_std_error;
  double mean_exits;
  double exits_std_error;
  int64_t exit_histogram[4]; /* 0, 1, 2, >= 3 noise exits */
  int64_t interlacing_checked;
  int64_t interlacing_violations;
} rmte_spiked_row;

typedef struct rmte_spiked_result rmte_spiked_result;

RMTEDGE_API rmte_status rmte_spiked_run(const rmte_spiked_config* config, rmte_spiked_result** out);
RMTEDGE_API void rmte_spiked_result_destroy(rmte_spiked_result* result);
RMTEDGE_API rmte_status rmte_spiked_result_count(const rmte_spiked_result* result, size_t* count);
RMTEDGE_API rmte_status rmte_spiked_result_row(const rmte_spiked_result* result, size_t index,
                                               rmte_spiked_row* out);

RMTEDGE_API rmte_status rmte_eta_star(double lambda, double c, double* out);
RMTEDGE_API rmte_status rmte_f_of_ell(double ell, double c, double gamma, double* out);
/* Per-draw operator-norm precision-loss differences; out has room for `samples`. */
RMTEDGE_API rmte_status rmte_precision_loss_gaps(int p, int n, const double* spikes, size_t spike_count,
                                                 rmte_shrinker shrinker, int64_t samples, uint64_t seed,
                                                 int workers, double* out);

#ifdef __cplusplus
}
#endif

#endif /* RMTEDGE_RMTEDGE_H */
