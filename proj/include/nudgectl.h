/* nudgectl - finite-dimensional feedback control of dissipative 1-D PDEs.
 *
 * C interface to the simulation engine: scenario configuration, runs,
 * trajectory/series access, gain-condition checks, and the interpolation
 * constant / attractor bound estimators. All functions return nctl_status
 * unless noted; on failure nctl_last_error() describes the problem for the
 * calling thread.
 */
#ifndef NUDGECTL_H
#define NUDGECTL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nctl_status {
    NCTL_OK = 0,
    NCTL_ERR_INVALID_ARG = 1,  /* null handle, bad value, unknown key/name */
    NCTL_ERR_PARSE = 2,        /* config text rejected (message has the line) */
    NCTL_ERR_RUNTIME = 3,      /* simulation or estimator failure */
    NCTL_ERR_BUFFER = 4        /* caller buffer too small */
} nctl_status;

typedef struct nctl_config nctl_config;
typedef struct nctl_result nctl_result;

/* Library version string, e.g. "1.0.0". */
const char* nctl_version(void);

/* Message for the most recent failure on this thread. Never NULL. */
const char* nctl_last_error(void);

/* ---- scenario presets and configuration -------------------------------- */

size_t nctl_preset_count(void);
const char* nctl_preset_name(size_t index); /* NULL when out of range */

nctl_status nctl_config_from_preset(const char* name, nctl_config** out);
/* Parses the `key = value` configuration text format. */
nctl_status nctl_config_parse(const char* text, nctl_config** out);
nctl_status nctl_config_clone(const nctl_config* cfg, nctl_config** out);
void nctl_config_destroy(nctl_config* cfg);

/* Dotted keys (model, grid.n, params.nu, control.mu, ...). Bare keys are
 * resolved against the params/control/integrator/grid/ic/outputs groups. */
nctl_status nctl_config_set(nctl_config* cfg, const char* key, const char* value);
nctl_status nctl_config_get(const nctl_config* cfg, const char* key, char* buf, size_t cap);
/* Serializes the full configuration; round-trips through nctl_config_parse.
 * On success *len is the text length (excluding the NUL terminator). */
nctl_status nctl_config_format(const nctl_config* cfg, char* buf, size_t cap, size_t* len);

/* Recommended actuator count and the number of linearly unstable modes. */
nctl_status nctl_config_actuators(const nctl_config* cfg, int* recommended, int* unstable);

/* ---- running ------------------------------------------------------------- */

/* Runs the configured scenario (including twin experiments). A flagged
 * blow-up is a successful run; inspect the summary. */
nctl_status nctl_run(const nctl_config* cfg, nctl_result** out);

/* Runs a KSE scenario nudged toward the trajectory stored in `reference`
 * (its snapshots are interpolated linearly in time). */
nctl_status nctl_run_with_reference(const nctl_config* cfg, const nctl_result* reference,
                                    nctl_result** out);

void nctl_result_destroy(nctl_result* result);

/* ---- trajectory access ---------------------------------------------------- */

typedef enum nctl_series {
    NCTL_SERIES_T = 0,
    NCTL_SERIES_L2 = 1,
    NCTL_SERIES_H1_SEMI = 2,
    NCTL_SERIES_H1 = 3,
    NCTL_SERIES_MAX_ABS = 4,
    NCTL_SERIES_MEAN = 5,
    NCTL_SERIES_UXX_L2 = 6,
    NCTL_SERIES_CONTROL_ACTIVE = 7, /* 0.0 / 1.0 */
    NCTL_SERIES_SYNC_L2 = 8,        /* twin runs only */
    NCTL_SERIES_SYNC_H1_SEMI = 9
} nctl_series;

size_t nctl_result_sample_count(const nctl_result* result);
/* Copies one diagnostic series; `buf` must hold sample_count values.
 * Sync series are absent (NCTL_ERR_INVALID_ARG) outside twin runs. */
nctl_status nctl_result_series(const nctl_result* result, nctl_series id, double* buf);

size_t nctl_result_grid_size(const nctl_result* result);
nctl_status nctl_result_grid_coords(const nctl_result* result, double* buf);

size_t nctl_result_snapshot_count(const nctl_result* result);
/* Copies snapshot `index`; `values` must hold grid_size entries. */
nctl_status nctl_result_snapshot(const nctl_result* result, size_t index, double* t_out,
                                 double* values);

typedef struct nctl_summary {
    double final_l2;
    double final_max_abs;
    double peak_max_abs;
    double max_abs_mean;
    double onset_time; /* first time max|u| > 0.5; -1 when never reached */
    int has_decay_fit;
    double decay_rate;
    double decay_r_squared;
    double fit_t_first;
    double fit_t_last;
    int blowup;
    double blowup_time;
    double max_imag_ratio;
    int has_sync;
    double sync_final_l2;
    double sync_final_h1_semi;
    double sync_time_below_1e6;
} nctl_summary;

nctl_status nctl_result_summary(const nctl_result* result, nctl_summary* out);

/* Time-averaged ||u_xx||^2 bound after `burn_in`; `drift` compares the
 * last-quarter window against the full window. */
nctl_status nctl_result_attractor_bound(const nctl_result* result, double burn_in, double* r2,
                                        double* drift);

/* ---- gain conditions ------------------------------------------------------ */

#define NCTL_VERDICT_MAX_TERMS 4

typedef struct nctl_verdict {
    int satisfied;
    int n_terms;
    char name[NCTL_VERDICT_MAX_TERMS][48];
    double lhs[NCTL_VERDICT_MAX_TERMS];
    double rhs[NCTL_VERDICT_MAX_TERMS];
    double margin[NCTL_VERDICT_MAX_TERMS];
    int strict[NCTL_VERDICT_MAX_TERMS]; /* 1: lhs > rhs, 0: lhs >= rhs */
    int ok[NCTL_VERDICT_MAX_TERMS];
    char commentary[256];
} nctl_verdict;

/* mu >= nu (2 pi N / L)^2 > alpha */
nctl_status nctl_check_ci(double nu, double alpha, double length, int n_actuators, double mu,
                          nctl_verdict* out);
/* mu > 4/nu and nu > mu c h^4 */
nctl_status nctl_check_kse_zero(double nu, double mu, double h, double c, nctl_verdict* out);
/* mu > 4/nu, nu >= mu c h^4, mu/8 >= sqrt(L/(2 pi)) R2 */
nctl_status nctl_check_kse_reference(double nu, double mu, double h, double c, double r2,
                                     double length, nctl_verdict* out);

/* ---- estimators ------------------------------------------------------------ */

/* Empirical constant of the Bramble-Hilbert-type approximation inequality:
 * max over seeded random band-limited fields of ||f - I_h f|| / (h ||f_x||).
 * `family` is fourier_modes|finite_volume|nodal; `boundary` is
 * periodic|neumann|dirichlet. Deterministic in `seed`. */
nctl_status nctl_estimate_c(const char* family, int n_actuators, int mean_zero,
                            const char* boundary, double length, int grid_n, int samples,
                            uint64_t seed, double* out);

/* Least-squares slope of log(values) over [w0, w1] with r^2 of the fit. */
nctl_status nctl_fit_decay_rate(const double* t, const double* values, size_t n, double w0,
                                double w1, double* rate, double* r_squared);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NUDGECTL_H */
