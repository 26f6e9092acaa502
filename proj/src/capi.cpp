#include "qploc/qploc.h"

#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "qploc/config.hpp"
#include "qploc/diagnostics.hpp"
#include "qploc/dynamics.hpp"
#include "qploc/eig.hpp"
#include "qploc/error.hpp"
#include "qploc/model.hpp"

struct qploc_matrix {
  qploc::BandedSymMatrix m;
};

struct qploc_spectrum {
  qploc::Spectrum s;
};

struct qploc_config {
  qploc::RunConfig c;
  std::string description;
  std::string output_dir;
};

struct qploc_result {
  qploc::RunResult r;
  std::vector<std::string> files;
};

namespace {

thread_local std::string last_error;

template <class F>
qploc_status guard(F&& f) noexcept {
  try {
    f();
    return QPLOC_OK;
  } catch (const qploc::Error& e) {
    last_error = e.what();
    return static_cast<qploc_status>(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return QPLOC_ERR_INTERNAL;
}

void need(const void* p, const char* what) {
  if (!p) throw qploc::ParameterError(std::string(what) + " must not be NULL");
}

qploc::TightBindingSpec to_cpp(const qploc_tb_spec& s) {
  return {s.t1, s.t2, s.v, s.alpha, s.phase, s.n_sites};
}

qploc::ContinuumSpec to_cpp(const qploc_continuum_spec& s) {
  return {s.v0, s.v1, s.alpha, s.phase, s.n_wells, s.m_grid, s.trap_omega, s.half_amplitude != 0};
}

qploc::SolverOptions to_cpp(const qploc_solver_options* o) {
  qploc::SolverOptions opts;
  if (o) opts = {o->tol, o->full_ceiling, o->cluster_gap, o->max_ql_shifts, o->max_inverse_steps};
  return opts;
}

std::vector<std::string> collect(const char* const* items, std::size_t n) {
  if (n > 0) need(items, "overrides");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    need(items[i], "override");
    out.emplace_back(items[i]);
  }
  return out;
}

qploc::Command command_of(const char* name) {
  need(name, "command");
  const auto cmd = qploc::parse_command(name);
  if (!cmd) throw qploc::ConfigError("", 0, std::string("unknown command '") + name + "'");
  return *cmd;
}

qploc_config* make_config(qploc::RunConfig rc) {
  auto c = std::make_unique<qploc_config>(qploc_config{std::move(rc), {}, {}});
  c->description = qploc::to_ini(c->c.describe());
  c->output_dir = c->c.output_dir.generic_string();
  return c.release();
}

template <class Build>
qploc_status build_matrix(qploc_matrix** out, Build&& build) {
  return guard([&] {
    need(out, "out");
    *out = new qploc_matrix{build()};
  });
}

}  // namespace

extern "C" {

const char* qploc_version(void) { return qploc::version(); }

const char* qploc_status_name(qploc_status status) {
  switch (status) {
    case QPLOC_OK: return "ok";
    case QPLOC_ERR_PARAMETER: return "parameter error";
    case QPLOC_ERR_CONFIG: return "configuration error";
    case QPLOC_ERR_SOLVER: return "solver failure";
    case QPLOC_ERR_TRUNCATION: return "truncation error";
    case QPLOC_ERR_IO: return "I/O failure";
    case QPLOC_ERR_DOMAIN: return "domain error";
    case QPLOC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* qploc_last_error(void) { return last_error.c_str(); }

void qploc_tb_spec_default(qploc_tb_spec* spec) {
  if (!spec) return;
  const qploc::TightBindingSpec d;
  *spec = {d.t1, d.t2, d.v, d.alpha, d.phase, d.n_sites};
}

void qploc_continuum_spec_default(qploc_continuum_spec* spec) {
  if (!spec) return;
  const qploc::ContinuumSpec d;
  *spec = {d.v0, d.v1, d.alpha, d.phase, d.n_wells, d.m_grid, d.trap_omega, d.half_amplitude ? 1 : 0};
}

void qploc_quench_spec_default(qploc_quench_spec* spec) {
  if (!spec) return;
  const qploc::QuenchSpec d;
  qploc_continuum_spec_default(&spec->lattice);
  spec->t_final = d.t_final;
  spec->n_samples = d.n_samples;
  spec->n_basis = d.n_basis;
}

qploc_status qploc_matrix_aa(const qploc_tb_spec* spec, qploc_matrix** out) {
  return build_matrix(out, [&] {
    need(spec, "spec");
    return qploc::build_aa(to_cpp(*spec));
  });
}

qploc_status qploc_matrix_t1t2(const qploc_tb_spec* spec, qploc_matrix** out) {
  return build_matrix(out, [&] {
    need(spec, "spec");
    return qploc::build_t1t2(to_cpp(*spec));
  });
}

qploc_status qploc_matrix_continuum(const qploc_continuum_spec* spec, qploc_matrix** out) {
  return build_matrix(out, [&] {
    need(spec, "spec");
    return qploc::build_continuum(to_cpp(*spec));
  });
}

qploc_status qploc_matrix_from_bands(size_t n, int bandwidth, const double* diag, const double* band1,
                                     const double* band2, qploc_matrix** out) {
  return build_matrix(out, [&] {
    if (bandwidth != 1 && bandwidth != 2) throw qploc::ParameterError("bandwidth must be 1 or 2");
    if (n < 1) throw qploc::ParameterError("dimension must be >= 1");
    need(diag, "diag");
    std::vector<std::vector<double>> bands;
    for (int b = 1; b <= bandwidth; ++b) {
      const double* src = b == 1 ? band1 : band2;
      const std::size_t len = n > static_cast<std::size_t>(b) ? n - b : 0;
      if (len > 0) need(src, b == 1 ? "band1" : "band2");
      bands.emplace_back(src, src + len);
    }
    return qploc::BandedSymMatrix(std::vector<double>(diag, diag + n), std::move(bands));
  });
}

void qploc_matrix_free(qploc_matrix* m) { delete m; }

size_t qploc_matrix_dim(const qploc_matrix* m) { return m ? m->m.dim() : 0; }

int qploc_matrix_bandwidth(const qploc_matrix* m) { return m ? m->m.bandwidth() : 0; }

qploc_status qploc_matrix_entry(const qploc_matrix* m, size_t i, size_t j, double* out) {
  return guard([&] {
    need(m, "matrix");
    need(out, "out");
    if (i >= m->m.dim() || j >= m->m.dim()) throw qploc::ParameterError("entry index out of range");
    *out = m->m(i, j);
  });
}

qploc_status qploc_matrix_multiply(const qploc_matrix* m, const double* x, double* y) {
  return guard([&] {
    need(m, "matrix");
    need(x, "x");
    need(y, "y");
    const std::size_t n = m->m.dim();
    m->m.multiply({x, n}, {y, n});
  });
}

qploc_status qploc_matrix_gershgorin(const qploc_matrix* m, double* lo, double* hi) {
  return guard([&] {
    need(m, "matrix");
    need(lo, "lo");
    need(hi, "hi");
    const auto b = m->m.gershgorin();
    *lo = b.lo;
    *hi = b.hi;
  });
}

qploc_status qploc_matrix_inertia(const qploc_matrix* m, double sigma, size_t* count) {
  return guard([&] {
    need(m, "matrix");
    need(count, "count");
    *count = m->m.inertia_below(sigma);
  });
}

void qploc_solver_options_default(qploc_solver_options* opts) {
  if (!opts) return;
  const qploc::SolverOptions d;
  *opts = {d.tol, d.full_ceiling, d.cluster_gap, d.max_ql_shifts, d.max_inverse_steps};
}

qploc_status qploc_solve_full(const qploc_matrix* m, const qploc_solver_options* opts, qploc_spectrum** out) {
  return guard([&] {
    need(m, "matrix");
    need(out, "out");
    *out = new qploc_spectrum{qploc::solve_full(m->m, to_cpp(opts))};
  });
}

qploc_status qploc_solve_lowest(const qploc_matrix* m, size_t k, const qploc_solver_options* opts,
                                qploc_spectrum** out) {
  return guard([&] {
    need(m, "matrix");
    need(out, "out");
    *out = new qploc_spectrum{qploc::solve_lowest(m->m, k, to_cpp(opts))};
  });
}

qploc_status qploc_solve_indices(const qploc_matrix* m, const size_t* indices, size_t count,
                                 const qploc_solver_options* opts, qploc_spectrum** out) {
  return guard([&] {
    need(m, "matrix");
    need(out, "out");
    if (count > 0) need(indices, "indices");
    const std::vector<std::size_t> idx(indices, indices + count);
    *out = new qploc_spectrum{qploc::solve_indices(m->m, idx, to_cpp(opts))};
  });
}

qploc_status qploc_dense_oracle(const qploc_matrix* m, qploc_spectrum** out) {
  return guard([&] {
    need(m, "matrix");
    need(out, "out");
    *out = new qploc_spectrum{qploc::dense_oracle(m->m)};
  });
}

void qploc_spectrum_free(qploc_spectrum* s) { delete s; }

size_t qploc_spectrum_size(const qploc_spectrum* s) { return s ? s->s.size() : 0; }

size_t qploc_spectrum_dim(const qploc_spectrum* s) { return s ? s->s.dim : 0; }

const double* qploc_spectrum_eigenvalues(const qploc_spectrum* s) {
  return s ? s->s.eigenvalues.data() : nullptr;
}

const double* qploc_spectrum_vector(const qploc_spectrum* s, size_t i) {
  if (!s || i >= s->s.size()) return nullptr;
  return s->s.vector(i).data();
}

double qploc_spectrum_residual_bound(const qploc_spectrum* s) {
  return s ? s->s.residual_bound : std::numeric_limits<double>::quiet_NaN();
}

qploc_status qploc_ipr(const double* v, size_t n, double* out) {
  return guard([&] {
    need(out, "out");
    if (n > 0) need(v, "v");
    *out = qploc::ipr(std::span<const double>(v, n));
  });
}

qploc_status qploc_ipr_complex(const double* v, size_t n, double* out) {
  return guard([&] {
    need(out, "out");
    if (n > 0) need(v, "v");
    std::vector<std::complex<double>> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = {v[2 * i], v[2 * i + 1]};
    *out = qploc::ipr(std::span<const std::complex<double>>(z));
  });
}

qploc_status qploc_aa_hopping_estimate(double v0, double* out) {
  return guard([&] {
    need(out, "out");
    *out = qploc::aa_hopping_estimate(v0);
  });
}

qploc_status qploc_aa_potential_estimate(double v1, double alpha, double v0, double* out) {
  return guard([&] {
    need(out, "out");
    *out = qploc::aa_potential_estimate(v1, alpha, v0);
  });
}

qploc_status qploc_duality_point(double alpha, double v0, qploc_duality* out) {
  return guard([&] {
    need(out, "out");
    const auto d = qploc::duality_point(alpha, v0);
    *out = {d.t_est, d.v_eff_per_v1, d.v1_star};
  });
}

qploc_status qploc_duality_boundary(double alpha, double v0_lo, double v0_hi, double tol, double* out,
                                    int* found) {
  return guard([&] {
    need(out, "out");
    need(found, "found");
    const auto b = qploc::duality_boundary(alpha, v0_lo, v0_hi, tol);
    *found = b ? 1 : 0;
    *out = b ? *b : std::numeric_limits<double>::quiet_NaN();
  });
}

qploc_status qploc_quench(const qploc_quench_spec* spec, qploc_quench_result* out) {
  return guard([&] {
    need(spec, "spec");
    need(out, "out");
    qploc::QuenchSpec q;
    q.lattice = to_cpp(spec->lattice);
    q.t_final = spec->t_final;
    q.n_samples = spec->n_samples;
    q.n_basis = spec->n_basis;
    const auto p = qploc::quench_point(q);
    *out = {p.ipr_initial, p.ipr_final, p.completeness_deficit};
  });
}

qploc_status qploc_evolve(const double* psi0, size_t n, const qploc_spectrum* basis, double t, double* out,
                          double* completeness_deficit) {
  return guard([&] {
    need(psi0, "psi0");
    need(basis, "basis");
    need(out, "out");
    if (n != basis->s.dim) throw qploc::ParameterError("psi0 length differs from the basis dimension");
    const double times[1] = {t};
    const auto ev = qploc::evolve(std::span<const double>(psi0, n), basis->s, times);
    for (std::size_t i = 0; i < n; ++i) {
      out[2 * i] = ev.states[0][i].real();
      out[2 * i + 1] = ev.states[0][i].imag();
    }
    if (completeness_deficit) *completeness_deficit = ev.completeness_deficit;
  });
}

qploc_status qploc_config_load(const char* command, const char* path, const char* const* overrides,
                               size_t n_overrides, qploc_config** out) {
  return guard([&] {
    need(out, "out");
    std::optional<std::filesystem::path> file;
    if (path) file = path;
    *out = make_config(qploc::load_config(command_of(command), file, collect(overrides, n_overrides)));
  });
}

qploc_status qploc_config_parse(const char* command, const char* text, const char* const* overrides,
                                size_t n_overrides, const char* env_workers, qploc_config** out) {
  return guard([&] {
    need(out, "out");
    std::optional<std::string> env;
    if (env_workers) env = env_workers;
    *out = make_config(qploc::parse_config(command_of(command), text ? text : "",
                                           collect(overrides, n_overrides), env));
  });
}

void qploc_config_free(qploc_config* c) { delete c; }

const char* qploc_config_describe(const qploc_config* c) { return c ? c->description.c_str() : ""; }

const char* qploc_config_output_dir(const qploc_config* c) { return c ? c->output_dir.c_str() : ""; }

const char* qploc_config_name(const qploc_config* c) { return c ? c->c.name.c_str() : ""; }

size_t qploc_config_workers(const qploc_config* c) { return c ? c->c.workers : 0; }

double qploc_config_threshold(const qploc_config* c) {
  return c ? c->c.effective_threshold() : std::numeric_limits<double>::quiet_NaN();
}

qploc_status qploc_run(const qploc_config* c, qploc_result** out) {
  return guard([&] {
    need(c, "config");
    need(out, "out");
    *out = new qploc_result{qploc::execute(c->c), {}};
  });
}

void qploc_result_free(qploc_result* r) { delete r; }

size_t qploc_result_dim(const qploc_result* r) { return r ? r->r.grid.dim : 0; }

size_t qploc_result_axis_count(const qploc_result* r) { return r ? r->r.grid.axes.size() : 0; }

const char* qploc_result_axis_name(const qploc_result* r, size_t axis) {
  if (!r || axis >= r->r.grid.axes.size()) return nullptr;
  return r->r.grid.axes[axis].name.c_str();
}

size_t qploc_result_axis_length(const qploc_result* r, size_t axis) {
  if (!r || axis >= r->r.grid.axes.size()) return 0;
  return r->r.grid.axes[axis].values.size();
}

const double* qploc_result_axis_values(const qploc_result* r, size_t axis) {
  if (!r || axis >= r->r.grid.axes.size()) return nullptr;
  return r->r.grid.axes[axis].values.data();
}

size_t qploc_result_state_count(const qploc_result* r) { return r ? r->r.grid.states.size() : 0; }

const size_t* qploc_result_states(const qploc_result* r) { return r ? r->r.grid.states.data() : nullptr; }

size_t qploc_result_row_count(const qploc_result* r) { return r ? r->r.grid.rows.size() : 0; }

qploc_status qploc_result_row(const qploc_result* r, size_t row, double* coords, size_t* state, double* energy,
                              double* ipr) {
  return guard([&] {
    need(r, "result");
    if (row >= r->r.grid.rows.size()) throw qploc::ParameterError("row index out of range");
    const auto& x = r->r.grid.rows[row];
    if (!x.coords.empty()) need(coords, "coords");
    for (std::size_t a = 0; a < x.coords.size(); ++a) coords[a] = x.coords[a];
    if (state) *state = x.state;
    if (energy) *energy = x.energy ? *x.energy : std::numeric_limits<double>::quiet_NaN();
    if (ipr) *ipr = x.ipr;
  });
}

const char* qploc_result_metadata(const qploc_result* r, const char* key) {
  if (!r || !key) return nullptr;
  const auto it = r->r.grid.metadata.find(key);
  return it == r->r.grid.metadata.end() ? nullptr : it->second.c_str();
}

qploc_status qploc_result_write(const qploc_config* c, qploc_result* r) {
  return guard([&] {
    need(c, "config");
    need(r, "result");
    r->files.clear();
    for (const auto& p : qploc::write_outputs(c->c, r->r)) r->files.push_back(p.generic_string());
  });
}

size_t qploc_result_file_count(const qploc_result* r) { return r ? r->files.size() : 0; }

const char* qploc_result_file(const qploc_result* r, size_t i) {
  if (!r || i >= r->files.size()) return nullptr;
  return r->files[i].c_str();
}

qploc_status qploc_result_transition(const qploc_result* r, size_t slice, size_t state_slot, double threshold,
                                     double* value, int* found) {
  return guard([&] {
    need(r, "result");
    need(value, "value");
    need(found, "found");
    const auto& g = r->r.grid;
    if (g.axes.empty() || g.axes.size() > 2) throw qploc::ParameterError("needs a one- or two-axis grid");
    if (state_slot >= g.states.size()) throw qploc::ParameterError("state slot out of range");
    std::optional<double> t;
    if (g.axes.size() == 1) {
      t = qploc::transition_scan(g, state_slot, threshold);
    } else {
      if (slice >= g.axes[0].values.size()) throw qploc::ParameterError("slice index out of range");
      t = qploc::transition_scan(g.slice(slice), state_slot, threshold);
    }
    *found = t ? 1 : 0;
    *value = t ? *t : std::numeric_limits<double>::quiet_NaN();
  });
}

}  // extern "C"
