/* C-only client of the shared library. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "qploc/qploc.h"

static int failures = 0;

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: CHECK(%s) failed\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

static void test_errors(void) {
  qploc_tb_spec spec;
  qploc_matrix* m = NULL;
  qploc_tb_spec_default(&spec);
  spec.t1 = -1.0;
  CHECK(qploc_matrix_aa(&spec, &m) == QPLOC_ERR_PARAMETER);
  CHECK(m == NULL);
  CHECK(strstr(qploc_last_error(), "t1") != NULL);
  CHECK(qploc_matrix_aa(NULL, &m) == QPLOC_ERR_PARAMETER);
  {
    double zero[3] = {0, 0, 0};
    double out = 0;
    CHECK(qploc_ipr(zero, 3, &out) == QPLOC_ERR_DOMAIN);
  }
  CHECK(strcmp(qploc_status_name(QPLOC_ERR_TRUNCATION), "truncation error") == 0);
  CHECK(strlen(qploc_version()) > 0);
}

static void test_free_chain(void) {
  qploc_tb_spec spec;
  qploc_matrix* m = NULL;
  qploc_spectrum* s = NULL;
  size_t i, n = 50, count = 0;
  double lo, hi, ipr;
  qploc_tb_spec_default(&spec);
  spec.n_sites = (int64_t)n;
  CHECK(qploc_matrix_aa(&spec, &m) == QPLOC_OK);
  CHECK(qploc_matrix_dim(m) == n);
  CHECK(qploc_matrix_bandwidth(m) == 1);
  CHECK(qploc_solve_full(m, NULL, &s) == QPLOC_OK);
  CHECK(qploc_spectrum_size(s) == n);
  for (i = 0; i < n; ++i) {
    const double exact = 2.0 * cos((double)(n - i) * 3.14159265358979323846 / (double)(n + 1));
    CHECK(fabs(qploc_spectrum_eigenvalues(s)[i] - exact) < 1e-12);
  }
  CHECK(qploc_spectrum_vector(s, n) == NULL);
  CHECK(qploc_ipr(qploc_spectrum_vector(s, 0), n, &ipr) == QPLOC_OK);
  CHECK(fabs(ipr - 3.0 / (2.0 * (double)(n + 1))) < 1e-12);
  CHECK(qploc_matrix_gershgorin(m, &lo, &hi) == QPLOC_OK);
  CHECK(lo <= -2.0 && hi >= 2.0);
  CHECK(qploc_matrix_inertia(m, 0.0, &count) == QPLOC_OK);
  CHECK(count == n / 2);
  qploc_spectrum_free(s);
  qploc_matrix_free(m);
}

static void test_bands_and_oracle(void) {
  const double diag[5] = {1, 2, 3, 4, 5};
  const double b1[4] = {0.5, -0.5, 0.25, 1};
  const double b2[3] = {0.1, 0.2, 0.3};
  qploc_matrix* m = NULL;
  qploc_spectrum *a = NULL, *b = NULL;
  size_t idx[2] = {1, 3};
  qploc_spectrum* sel = NULL;
  double entry = 0;
  size_t i;
  CHECK(qploc_matrix_from_bands(5, 2, diag, b1, b2, &m) == QPLOC_OK);
  CHECK(qploc_matrix_entry(m, 3, 1, &entry) == QPLOC_OK && entry == 0.2);
  CHECK(qploc_matrix_entry(m, 9, 1, &entry) == QPLOC_ERR_PARAMETER);
  CHECK(qploc_solve_full(m, NULL, &a) == QPLOC_OK);
  CHECK(qploc_dense_oracle(m, &b) == QPLOC_OK);
  CHECK(qploc_solve_indices(m, idx, 2, NULL, &sel) == QPLOC_OK);
  for (i = 0; i < 5; ++i) CHECK(fabs(qploc_spectrum_eigenvalues(a)[i] - qploc_spectrum_eigenvalues(b)[i]) < 1e-12);
  CHECK(fabs(qploc_spectrum_eigenvalues(sel)[1] - qploc_spectrum_eigenvalues(a)[3]) < 1e-12);
  CHECK(qploc_spectrum_residual_bound(a) < 1e-12);
  CHECK(qploc_matrix_from_bands(5, 3, diag, b1, b2, &m) == QPLOC_ERR_PARAMETER);
  qploc_spectrum_free(sel);
  qploc_spectrum_free(a);
  qploc_spectrum_free(b);
  qploc_matrix_free(m);
}

static void test_estimates(void) {
  qploc_duality d;
  double t = 0, v0 = 0;
  int found = 0;
  CHECK(qploc_aa_hopping_estimate(30, &t) == QPLOC_OK);
  CHECK(fabs(t - 5.06e-4) < 5e-6);
  CHECK(qploc_duality_point(0.6180339887498949, 30, &d) == QPLOC_OK);
  CHECK(fabs(d.v1_star - 2.17e-3) < 1e-5);
  CHECK(qploc_duality_boundary(0.6180339887498949, 0.1, 30, 1e-8, &v0, &found) == QPLOC_OK);
  CHECK(found == 1);
  CHECK(qploc_duality_point(-1, 0, &d) == QPLOC_ERR_PARAMETER);
}

static void test_config_run(void) {
  const char* overrides[] = {"n_sites=20", "v_range=0, 4, 3", "t2_values=0, 0.1"};
  qploc_config* cfg = NULL;
  qploc_result* res = NULL;
  double coords[2], energy, ipr;
  size_t state;
  CHECK(qploc_config_parse("fig1", "[run]\nworkers = 2\n", overrides, 3, NULL, &cfg) == QPLOC_OK);
  CHECK(qploc_config_workers(cfg) == 2);
  CHECK(fabs(qploc_config_threshold(cfg) - 0.5) < 1e-15);
  CHECK(strstr(qploc_config_describe(cfg), "n_sites = 20") != NULL);
  CHECK(qploc_run(cfg, &res) == QPLOC_OK);
  CHECK(qploc_result_axis_count(res) == 2);
  CHECK(strcmp(qploc_result_axis_name(res, 1), "v") == 0);
  CHECK(qploc_result_row_count(res) == 2 * 3 * 20);
  CHECK(qploc_result_row(res, 21, coords, &state, &energy, &ipr) == QPLOC_OK);
  CHECK(coords[0] == 0.0 && coords[1] == 2.0 && state == 1);
  CHECK(!isnan(energy) && ipr > 0 && ipr <= 1);
  CHECK(strcmp(qploc_result_metadata(res, "experiment"), "fig1") == 0);
  CHECK(qploc_result_metadata(res, "missing") == NULL);
  qploc_result_free(res);
  qploc_config_free(cfg);

  CHECK(qploc_config_parse("fig1", "[fig1]\nt3 = 1\n", NULL, 0, NULL, &cfg) == QPLOC_ERR_CONFIG);
  CHECK(strstr(qploc_last_error(), "t3") != NULL);
  CHECK(strstr(qploc_last_error(), "line 2") != NULL);
  CHECK(qploc_config_parse("fig9", "", NULL, 0, NULL, &cfg) == QPLOC_ERR_CONFIG);
  CHECK(qploc_config_load("fig1", "/nonexistent/qploc.ini", NULL, 0, &cfg) == QPLOC_ERR_IO);
}

static void test_evolve(void) {
  qploc_continuum_spec c;
  qploc_matrix* m = NULL;
  qploc_spectrum* s = NULL;
  double* out;
  double deficit = 1, norm = 0;
  size_t j, n;
  qploc_continuum_spec_default(&c);
  c.n_wells = 4;
  c.m_grid = 64;
  c.v0 = 1;
  CHECK(qploc_matrix_continuum(&c, &m) == QPLOC_OK);
  CHECK(qploc_solve_full(m, NULL, &s) == QPLOC_OK);
  n = qploc_spectrum_dim(s);
  out = malloc(2 * n * sizeof(double));
  CHECK(qploc_evolve(qploc_spectrum_vector(s, 2), n, s, 1.5, out, &deficit) == QPLOC_OK);
  for (j = 0; j < n; ++j) norm += out[2 * j] * out[2 * j] + out[2 * j + 1] * out[2 * j + 1];
  CHECK(fabs(norm - 1) < 1e-12);
  CHECK(fabs(deficit) < 1e-12);
  free(out);
  qploc_spectrum_free(s);
  qploc_matrix_free(m);
}

int main(void) {
  test_errors();
  test_free_chain();
  test_bands_and_oracle();
  test_estimates();
  test_config_run();
  test_evolve();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("C API: all checks passed\n");
  return 0;
}
