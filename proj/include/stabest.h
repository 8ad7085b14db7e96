/*
 * C interface of the stabest shared library: simulation of self-similar
 * stable processes, Hurst/stability index estimation from negative-order
 * power variations, asymptotic CLT variances and reproducible Monte Carlo
 * experiment campaigns.
 *
 * Every function either returns a status code or an opaque handle (NULL on
 * failure); stabest_last_error() describes the most recent failure on the
 * calling thread.
 */
#ifndef STABEST_H
#define STABEST_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum stabest_status {
    STABEST_OK = 0,
    STABEST_ERR_INVALID = 1,    /* parameter or config validation failed */
    STABEST_ERR_NUMERIC = 2,    /* numeric failure (non-convergence, bracket loss) */
    STABEST_ERR_DEGENERATE = 3, /* statistic undefined on this input */
    STABEST_ERR_IO = 4,         /* file input/output failure */
    STABEST_ERR_INTERNAL = 5
} stabest_status;

/* Message for the last failing call on this thread; empty string if none. */
const char* stabest_last_error(void);
/* Status of the last call on this thread (handle-returning functions signal
 * failure by NULL; this recovers the category). */
stabest_status stabest_last_status(void);

/* --- special functions ---------------------------------------------------- */

/* E|X|^beta of a standard symmetric alpha-stable variable, closed form. */
stabest_status stabest_neg_moment_closed_form(double alpha, double beta, double* out);
/* Same via the characteristic-function integral (independent oracle). */
stabest_status stabest_neg_moment_cf_integral(double alpha, double beta, double* out);
/* E|N(0, s^2)|^beta. */
stabest_status stabest_neg_moment_gaussian(double s, double beta, double* out);
/* Theoretical contrast value as a function of alpha (u = -beta1, v = -beta2). */
stabest_status stabest_alpha_signature(double u, double v, double alpha, double* out);
/* Inverse of the signature on (-inf, 0). */
stabest_status stabest_alpha_signature_inverse(double u, double v, double y, double* out);

/* --- simulation ------------------------------------------------------------ */

typedef enum stabest_model {
    STABEST_MODEL_FBM = 0,
    STABEST_MODEL_LEVY = 1,
    STABEST_MODEL_LFSM = 2,
    STABEST_MODEL_TAKENAKA = 3
} stabest_model;

typedef struct stabest_sim_params {
    stabest_model model;
    uint64_t n;       /* grid count: observations at k/n, k = 0..n */
    double hurst;     /* fbm, lfsm */
    double alpha;     /* levy, lfsm, takenaka */
    double nu;        /* takenaka */
    /* optional knobs; 0 selects the documented default */
    double lfsm_kernel_halfwidth;
    uint32_t lfsm_mesh_div;
    double tk_r_min;
    double tk_r_max;
    double tk_log_step;
    int allow_alpha_one; /* levy only */
} stabest_sim_params;

typedef struct stabest_path stabest_path; /* opaque */

stabest_path* stabest_simulate(const stabest_sim_params* params, uint64_t master_seed,
                               uint64_t stream_index);
size_t stabest_path_length(const stabest_path* path); /* n + 1 values */
const double* stabest_path_values(const stabest_path* path);
/* Writes the `t,value` CSV; meta_path may be NULL to skip the sidecar. */
stabest_status stabest_path_write(const stabest_path* path, const char* csv_path,
                                  const char* meta_path);
void stabest_path_free(stabest_path* path);

/* --- estimation ------------------------------------------------------------ */

typedef struct stabest_estimate_opts {
    const double* filter_coeffs; /* NULL for the default (1,-2,1) */
    size_t filter_len;
    double beta;  /* 0 for the default -0.25 */
    double beta1; /* 0 for the default -0.4 */
    double beta2; /* 0 for the default -0.1 */
} stabest_estimate_opts;

typedef struct stabest_estimate_result {
    double h_hat;
    double alpha_hat;
    int degenerate_alpha;
    double v_n_beta;
    double v_half_beta;
    double v_n_beta1;
    double v_n_beta2;
    double psi_value;
    uint64_t n;
} stabest_estimate_result;

/* Estimate from a path of len = n+1 values observed at k/n. n must be even;
 * use stabest_estimate_csv for the auto-truncating file-based variant. */
stabest_status stabest_estimate(const double* values, size_t len,
                                const stabest_estimate_opts* opts,
                                stabest_estimate_result* out);

/* Reads a `t,value` CSV. If the record has an odd grid count it is truncated
 * by one sample; *truncated (may be NULL) reports whether that happened. */
stabest_status stabest_estimate_csv(const char* csv_path, const stabest_estimate_opts* opts,
                                    stabest_estimate_result* out, int* truncated);

/* --- asymptotic variances ---------------------------------------------------

   The report pairs the CLT variance of sqrt(n)(H_hat - H) ("hurst") with the
   one of sqrt(n)(alpha_hat - alpha) ("stability"). */

typedef struct stabest_variance_report stabest_variance_report; /* opaque */

/* Gaussian model: Hermite series with order cap q_max (0 = default 40) and
 * correlation lag cap r_max (0 = default 1024). */
stabest_variance_report* stabest_variance_fbm(double hurst, double beta, double beta1,
                                              double beta2, int q_max, long r_max);
/* Independent-increment stable model: Monte Carlo covariance table with
 * mc_samples draws (0 = default 1e6) under the given seed. */
stabest_variance_report* stabest_variance_levy(double alpha, double beta, double beta1,
                                               double beta2, uint64_t mc_samples, uint64_t seed,
                                               uint32_t threads);

double stabest_variance_hurst(const stabest_variance_report* report);
double stabest_variance_stability(const stabest_variance_report* report);
/* Structured text rendering (values, Gamma matrices, gradients, diagnostics).
 * Returns the number of bytes that would be written, snprintf-style. */
size_t stabest_variance_render(const stabest_variance_report* report, char* buffer, size_t size);
void stabest_variance_free(stabest_variance_report* report);

/* --- experiments ------------------------------------------------------------ */

/* Runs the campaign described by the key=value config file and writes the
 * CSV/summary files named there. The master seed always comes from the
 * caller; threads caps the workers without affecting output bytes. */
stabest_status stabest_run_experiment(const char* config_path, uint64_t master_seed,
                                      uint32_t threads);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* STABEST_H */
