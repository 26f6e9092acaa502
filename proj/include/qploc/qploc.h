/* C interface to the quasiperiodic localization library. All objects are
 * opaque handles owned by the caller and released with the matching _free
 * function. Every fallible call returns a qploc_status; on failure
 * qploc_last_error() describes the most recent error on the calling thread. */
#ifndef QPLOC_H
#define QPLOC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QPLOC_API __declspec(dllexport)
#else
#define QPLOC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qploc_status {
  QPLOC_OK = 0,
  QPLOC_ERR_PARAMETER = 1,
  QPLOC_ERR_CONFIG = 2,
  QPLOC_ERR_SOLVER = 3,
  QPLOC_ERR_TRUNCATION = 4,
  QPLOC_ERR_IO = 5,
  QPLOC_ERR_DOMAIN = 6,
  QPLOC_ERR_INTERNAL = 7
} qploc_status;

QPLOC_API const char* qploc_version(void);
QPLOC_API const char* qploc_status_name(qploc_status status);
/* Empty string when no call on this thread has failed yet. */
QPLOC_API const char* qploc_last_error(void);

/* ---- model ---- */

typedef struct qploc_tb_spec {
  double t1;
  double t2;
  double v;
  double alpha;
  double phase;
  int64_t n_sites;
} qploc_tb_spec;

typedef struct qploc_continuum_spec {
  double v0; /* Er */
  double v1;
  double alpha;
  double phase;
  int64_t n_wells;
  int64_t m_grid;
  double trap_omega;
  int half_amplitude; /* nonzero: V/2 cos(...) convention */
} qploc_continuum_spec;

typedef struct qploc_quench_spec {
  qploc_continuum_spec lattice;
  double t_final; /* hbar / Er */
  int64_t n_samples;
  int64_t n_basis; /* 0: 4 * n_wells */
} qploc_quench_spec;

QPLOC_API void qploc_tb_spec_default(qploc_tb_spec* spec);
QPLOC_API void qploc_continuum_spec_default(qploc_continuum_spec* spec);
QPLOC_API void qploc_quench_spec_default(qploc_quench_spec* spec);

typedef struct qploc_matrix qploc_matrix;

QPLOC_API qploc_status qploc_matrix_aa(const qploc_tb_spec* spec, qploc_matrix** out);
QPLOC_API qploc_status qploc_matrix_t1t2(const qploc_tb_spec* spec, qploc_matrix** out);
QPLOC_API qploc_status qploc_matrix_continuum(const qploc_continuum_spec* spec, qploc_matrix** out);
/* band2 is ignored when bandwidth == 1. band1 and band2 hold n-1 and n-2
 * entries. */
QPLOC_API qploc_status qploc_matrix_from_bands(size_t n, int bandwidth, const double* diag,
                                               const double* band1, const double* band2,
                                               qploc_matrix** out);
QPLOC_API void qploc_matrix_free(qploc_matrix* m);

QPLOC_API size_t qploc_matrix_dim(const qploc_matrix* m);
QPLOC_API int qploc_matrix_bandwidth(const qploc_matrix* m);
QPLOC_API qploc_status qploc_matrix_entry(const qploc_matrix* m, size_t i, size_t j, double* out);
/* y = H x, both of length dim */
QPLOC_API qploc_status qploc_matrix_multiply(const qploc_matrix* m, const double* x, double* y);
QPLOC_API qploc_status qploc_matrix_gershgorin(const qploc_matrix* m, double* lo, double* hi);
/* Number of eigenvalues strictly below sigma. */
QPLOC_API qploc_status qploc_matrix_inertia(const qploc_matrix* m, double sigma, size_t* count);

/* ---- eig ---- */

typedef struct qploc_solver_options {
  double tol;
  size_t full_ceiling;
  double cluster_gap;
  int max_ql_shifts;
  int max_inverse_steps;
} qploc_solver_options;

QPLOC_API void qploc_solver_options_default(qploc_solver_options* opts);

typedef struct qploc_spectrum qploc_spectrum;

/* opts may be NULL for the defaults. */
QPLOC_API qploc_status qploc_solve_full(const qploc_matrix* m, const qploc_solver_options* opts,
                                        qploc_spectrum** out);
QPLOC_API qploc_status qploc_solve_lowest(const qploc_matrix* m, size_t k,
                                          const qploc_solver_options* opts, qploc_spectrum** out);
/* indices strictly increasing, ascending-energy positions */
QPLOC_API qploc_status qploc_solve_indices(const qploc_matrix* m, const size_t* indices, size_t count,
                                           const qploc_solver_options* opts, qploc_spectrum** out);
/* Dense Jacobi reference solver for small matrices. */
QPLOC_API qploc_status qploc_dense_oracle(const qploc_matrix* m, qploc_spectrum** out);
QPLOC_API void qploc_spectrum_free(qploc_spectrum* s);

QPLOC_API size_t qploc_spectrum_size(const qploc_spectrum* s);
QPLOC_API size_t qploc_spectrum_dim(const qploc_spectrum* s);
QPLOC_API const double* qploc_spectrum_eigenvalues(const qploc_spectrum* s);
/* Unit-norm eigenvector i (dim entries), NULL when out of range. */
QPLOC_API const double* qploc_spectrum_vector(const qploc_spectrum* s, size_t i);
QPLOC_API double qploc_spectrum_residual_bound(const qploc_spectrum* s);

/* ---- diagnostics ---- */

QPLOC_API qploc_status qploc_ipr(const double* v, size_t n, double* out);
/* interleaved re, im pairs; n complex entries */
QPLOC_API qploc_status qploc_ipr_complex(const double* v, size_t n, double* out);

typedef struct qploc_duality {
  double t_est;
  double v_eff_per_v1;
  double v1_star;
} qploc_duality;

QPLOC_API qploc_status qploc_aa_hopping_estimate(double v0, double* out);
QPLOC_API qploc_status qploc_aa_potential_estimate(double v1, double alpha, double v0, double* out);
QPLOC_API qploc_status qploc_duality_point(double alpha, double v0, qploc_duality* out);
/* *found is 0 when [v0_lo, v0_hi] does not bracket the boundary. */
QPLOC_API qploc_status qploc_duality_boundary(double alpha, double v0_lo, double v0_hi, double tol,
                                              double* out, int* found);

/* ---- dynamics ---- */

typedef struct qploc_quench_result {
  double ipr_initial;
  double ipr_final;
  double completeness_deficit;
} qploc_quench_result;

QPLOC_API qploc_status qploc_quench(const qploc_quench_spec* spec, qploc_quench_result* out);
/* Propagates the real state psi0 (basis dim entries) in the eigenbasis to
 * time t. out receives dim interleaved re, im pairs. */
QPLOC_API qploc_status qploc_evolve(const double* psi0, size_t n, const qploc_spectrum* basis, double t,
                                    double* out, double* completeness_deficit);

/* ---- configuration and sweeps ---- */

typedef struct qploc_config qploc_config;
typedef struct qploc_result qploc_result;

/* command: fig1 fig2 fig3-4 fig5 quench solve custom. path may be NULL.
 * overrides are "key=value" strings applied after the file. Reads
 * QPLOC_WORKERS from the environment. */
QPLOC_API qploc_status qploc_config_load(const char* command, const char* path,
                                        const char* const* overrides, size_t n_overrides,
                                        qploc_config** out);
/* Same, from in-memory text; env_workers may be NULL. */
QPLOC_API qploc_status qploc_config_parse(const char* command, const char* text,
                                         const char* const* overrides, size_t n_overrides,
                                         const char* env_workers, qploc_config** out);
QPLOC_API void qploc_config_free(qploc_config* c);

/* Effective configuration as INI text, valid until the handle is freed. */
QPLOC_API const char* qploc_config_describe(const qploc_config* c);
QPLOC_API const char* qploc_config_output_dir(const qploc_config* c);
QPLOC_API const char* qploc_config_name(const qploc_config* c);
QPLOC_API size_t qploc_config_workers(const qploc_config* c);
QPLOC_API double qploc_config_threshold(const qploc_config* c);

QPLOC_API qploc_status qploc_run(const qploc_config* c, qploc_result** out);
QPLOC_API void qploc_result_free(qploc_result* r);

QPLOC_API size_t qploc_result_dim(const qploc_result* r);
QPLOC_API size_t qploc_result_axis_count(const qploc_result* r);
QPLOC_API const char* qploc_result_axis_name(const qploc_result* r, size_t axis);
QPLOC_API size_t qploc_result_axis_length(const qploc_result* r, size_t axis);
QPLOC_API const double* qploc_result_axis_values(const qploc_result* r, size_t axis);
QPLOC_API size_t qploc_result_state_count(const qploc_result* r);
QPLOC_API const size_t* qploc_result_states(const qploc_result* r);
QPLOC_API size_t qploc_result_row_count(const qploc_result* r);
/* coords receives axis_count values; energy is NaN when not available. */
QPLOC_API qploc_status qploc_result_row(const qploc_result* r, size_t row, double* coords, size_t* state,
                                        double* energy, double* ipr);
/* NULL when the key is absent. */
QPLOC_API const char* qploc_result_metadata(const qploc_result* r, const char* key);

/* Writes the grid, sidecar and summary files for the run. */
QPLOC_API qploc_status qploc_result_write(const qploc_config* c, qploc_result* r);
QPLOC_API size_t qploc_result_file_count(const qploc_result* r);
QPLOC_API const char* qploc_result_file(const qploc_result* r, size_t i);

/* Transition summary of a written or in-memory result: for state slot s of
 * a one-axis grid, or of slice `slice` of a two-axis grid (ignored for one
 * axis). *found is 0 for "no transition". */
QPLOC_API qploc_status qploc_result_transition(const qploc_result* r, size_t slice, size_t state_slot,
                                               double threshold, double* value, int* found);

#ifdef __cplusplus
}
#endif

#endif
