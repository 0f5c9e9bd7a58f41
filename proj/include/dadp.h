/* SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the dadp shared library: discretisation-adaptive stopping
 * rules for filter-based regularisation of noisy linear inverse problems.
 *
 * All functions return a dadp_status; on failure a human-readable message is
 * available from dadp_last_error() (thread-local). Handles are opaque and
 * must be released with the matching _free function.
 */
#ifndef DADP_H
#define DADP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dadp_status {
    DADP_OK = 0,
    DADP_ERR_INVALID_ARGUMENT = 1,
    DADP_ERR_IO = 2,
    DADP_ERR_INTERNAL = 3
} dadp_status;

/* Last error message of the calling thread; empty string if none. */
const char* dadp_last_error(void);

/* ---- test problems ---------------------------------------------------- */

typedef struct dadp_problem dadp_problem;

/* name: phillips | deriv2 | gravity | heat. D >= 4 (power of two for the
 * averaging ladder). */
dadp_status dadp_problem_create(const char* name, int D, dadp_problem** out);
dadp_status dadp_problem_dim(const dadp_problem* p, int* dim_out);
/* Writes <prefix>_A.bin, <prefix>_x.bin, <prefix>_y.bin (binary matrix
 * format: magic "AREG", u32 rows, u32 cols, row-major little-endian f64). */
dadp_status dadp_problem_save(const dadp_problem* p, const char* prefix);
void dadp_problem_free(dadp_problem* p);

/* ---- single run ------------------------------------------------------- */

typedef struct dadp_run_result {
    double error;      /* ||x_hat - x_true|| */
    int m;             /* chosen discretisation dimension */
    long long k;       /* chosen iteration count (grid index for algorithm2) */
    double alpha;      /* chosen penalty (algorithm2 only, else 0) */
    double cost_paper; /* sum_l k_dp(m_l) m_l^2 */
    double cost_flops; /* sum_l k_dp(m_l) 2 m_l D */
    int capped;        /* 1 if the iteration cap was hit */
} dadp_run_result;

/* rule: algorithm1 | algorithm2 | naive | early_stopping.
 * Gaussian noise of level delta seeded with `seed`; tau > 1; eta <= 0 selects
 * the default ratio threshold; cap bounds the cumulative iteration count. */
dadp_status dadp_run_rule(const dadp_problem* p, const char* rule, double delta,
                          unsigned long long seed, double tau, double eta,
                          long long cap, dadp_run_result* out);

/* ---- experiment harness ----------------------------------------------- */

/* Runs the full experiment described by a config file and writes runs.csv,
 * tables.csv and tables.txt into output_dir (output_dir overrides the config
 * when non-NULL/non-empty). */
dadp_status dadp_run_experiment(const char* config_path, const char* output_dir);

/* Re-aggregates a previously written run log into tables. */
dadp_status dadp_tables(const char* config_path, const char* runlog_path,
                        const char* csv_path, const char* txt_path);

/* Monte Carlo study of the dimension-one failure mode of the plain
 * k-maximising rule; one CSV row per k value. */
dadp_status dadp_counterexample(double sigma1, double tau, int N,
                                const int* k_values, int n_k, int trials,
                                unsigned long long seed, const char* csv_path);

/* Convergence-rate study on a diagonal problem with polynomial spectrum j^-q
 * and Hoelder source of exponent nu. Slope/ratio outputs may be NULL. */
dadp_status dadp_rate_study(double q, double nu, double rho, int N, int runs,
                            double tau, double eta, unsigned long long seed,
                            const char* csv_path, double* empirical_slope,
                            double* theoretical_slope, double* median_ratio);

/* In-process property suite; *failures receives the failed-check count. */
dadp_status dadp_selftest(int verbose, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* DADP_H */
