#include "qploc/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <sstream>
#include <thread>

#include "qploc/error.hpp"

namespace qploc {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

[[noreturn]] void unknown_axis(const std::string& name, const char* model) {
  throw ParameterError("unknown axis '" + name + "' for " + model + " sweeps");
}

// State indices reported for every cell.
std::vector<std::size_t> reported_states(const SweepPlan& plan) {
  if (std::holds_alternative<QuenchSpec>(plan.base)) return {0};
  if (!plan.states.empty()) return plan.states;
  std::size_t count = 0;
  switch (plan.solver) {
    case SolverKind::full: count = problem_dim(plan); break;
    case SolverKind::lowest: count = plan.k; break;
    case SolverKind::selected: count = 0; break;
  }
  std::vector<std::size_t> all(count);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return all;
}

Spectrum solve_cell(const BandedSymMatrix& h, const SweepPlan& plan) {
  switch (plan.solver) {
    case SolverKind::full: return solve_full(h, plan.solver_options);
    case SolverKind::lowest: return solve_lowest(h, plan.k, plan.solver_options);
    case SolverKind::selected: return solve_indices(h, plan.states, plan.solver_options);
  }
  throw ParameterError("unknown solver kind");
}

// Position of a reported state inside the returned spectrum.
std::size_t spectrum_slot(const SweepPlan& plan, std::size_t state, std::size_t ordinal) {
  return plan.solver == SolverKind::selected ? ordinal : state;
}

void run_cell(const SweepPlan& plan, const std::vector<double>& coords,
              const std::vector<std::size_t>& states, IprGrid::Row* out) {
  auto emit_spectrum = [&](const BandedSymMatrix& h) {
    const Spectrum sp = solve_cell(h, plan);
    for (std::size_t s = 0; s < states.size(); ++s) {
      const std::size_t slot = spectrum_slot(plan, states[s], s);
      out[s] = {coords, states[s], sp.eigenvalues[slot], ipr(sp.vector(slot))};
    }
  };
  std::visit(
      [&](auto spec) {
        using T = std::decay_t<decltype(spec)>;
        for (std::size_t a = 0; a < plan.axes.size(); ++a)
          apply_axis(spec, plan.axes[a].name, coords[a]);
        if constexpr (std::is_same_v<T, TightBindingSpec>) {
          emit_spectrum(plan.tb_model == TightBindingModel::aa ? build_aa(spec) : build_t1t2(spec));
        } else if constexpr (std::is_same_v<T, ContinuumSpec>) {
          emit_spectrum(build_continuum(spec));
        } else {
          const QuenchPoint q = quench_point(spec, plan.solver_options);
          out[0] = {coords, 0, std::nullopt, q.ipr_final};
        }
      },
      plan.base);
}

}  // namespace

std::size_t problem_dim(const SweepPlan& plan) {
  return std::visit(
      [](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TightBindingSpec>)
          return static_cast<std::size_t>(s.n_sites);
        else if constexpr (std::is_same_v<T, ContinuumSpec>)
          return static_cast<std::size_t>(s.m_grid);
        else
          return static_cast<std::size_t>(s.lattice.m_grid);
      },
      plan.base);
}

Axis Axis::linspace(std::string name, double lo, double hi, std::size_t count) {
  if (count < 2) throw ParameterError("axis '" + name + "' needs at least 2 points");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw ParameterError("axis '" + name + "' range must be finite");
  Axis a{std::move(name), std::vector<double>(count)};
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) a.values[i] = lo + step * static_cast<double>(i);
  a.values.back() = hi;
  return a;
}

void apply_axis(TightBindingSpec& spec, const std::string& name, double value) {
  if (name == "t1") spec.t1 = value;
  else if (name == "t2") spec.t2 = value;
  else if (name == "v") spec.v = value;
  else if (name == "alpha") spec.alpha = value;
  else if (name == "alpha_factor") spec.alpha = value * golden_alpha;
  else if (name == "phase") spec.phase = value;
  else unknown_axis(name, "tight-binding");
}

void apply_axis(ContinuumSpec& spec, const std::string& name, double value) {
  if (name == "v0") spec.v0 = value;
  else if (name == "v1") spec.v1 = value;
  else if (name == "v0_v1") spec.v0 = spec.v1 = value;
  else if (name == "alpha") spec.alpha = value;
  else if (name == "alpha_factor") spec.alpha = value * golden_alpha;
  else if (name == "phase") spec.phase = value;
  else if (name == "trap_omega") spec.trap_omega = value;
  else unknown_axis(name, "continuum");
}

void apply_axis(QuenchSpec& spec, const std::string& name, double value) {
  if (name == "t_final") spec.t_final = value;
  else apply_axis(spec.lattice, name, value);
}

void SweepPlan::validate() const {
  if (axes.size() > 2) throw ParameterError("a sweep has at most 2 axes");
  for (const auto& a : axes) {
    if (a.values.empty()) throw ParameterError("axis '" + a.name + "' is empty");
    for (double v : a.values)
      if (!std::isfinite(v)) throw ParameterError("axis '" + a.name + "' has a non-finite value");
  }
  if (axes.size() == 2 && axes[0].name == axes[1].name)
    throw ParameterError("both axes sweep '" + axes[0].name + "'");
  if (workers < 1) throw ParameterError("workers must be >= 1");

  // Validate the spec at the first cell so bad axis names fail before any work.
  std::visit(
      [&](auto spec) {
        for (const auto& a : axes) apply_axis(spec, a.name, a.values.front());
        spec.validate();
      },
      base);

  const bool quench = std::holds_alternative<QuenchSpec>(base);
  const std::size_t dim = problem_dim(*this);
  if (!quench) {
    if (solver == SolverKind::lowest && (k < 1 || k > dim))
      throw ParameterError("k must lie in [1, dim]");
    if (solver == SolverKind::selected && states.empty())
      throw ParameterError("the selected-state solver needs tracked states");
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (states[i] >= dim) throw ParameterError("tracked state index out of range");
      if (i > 0 && states[i] <= states[i - 1])
        throw ParameterError("tracked state indices must be strictly increasing");
      if (solver == SolverKind::lowest && states[i] >= k)
        throw ParameterError("tracked state index must be < k for the lowest-k solver");
    }
    if (solver == SolverKind::full && dim > solver_options.full_ceiling)
      throw ParameterError("full solve requested above the ceiling; use the lowest-k solver");
  }

  switch (kind) {
    case Experiment::fig1:
    case Experiment::fig2:
      if (!std::holds_alternative<TightBindingSpec>(base))
        throw ParameterError(std::string(to_string(kind)) + " needs a tight-binding base spec");
      break;
    case Experiment::fig3_4:
    case Experiment::fig5:
      if (!std::holds_alternative<ContinuumSpec>(base))
        throw ParameterError(std::string(to_string(kind)) + " needs a continuum base spec");
      break;
    case Experiment::fig6:
      if (!quench) throw ParameterError("fig6 needs a quench base spec");
      break;
    case Experiment::custom: break;
  }
}

double default_v1_max(double v0, double alpha) {
  return std::min(v0, 4.0 * duality_point(alpha, v0).v1_star);
}

SweepPlan default_plan(Experiment kind, Scale scale) {
  const bool paper = scale == Scale::paper;
  SweepPlan plan;
  plan.kind = kind;
  switch (kind) {
    case Experiment::fig1:
    case Experiment::custom: {
      TightBindingSpec tb;
      tb.n_sites = 1000;
      plan.base = tb;
      plan.axes = {Axis{"t2", {0.0, 0.01, 0.05, 0.1}}, Axis::linspace("v", 0.0, 4.0, 61)};
      plan.solver = SolverKind::full;
      break;
    }
    case Experiment::fig2: {
      TightBindingSpec tb;
      tb.n_sites = paper ? 40000 : 2000;
      plan.base = tb;
      plan.axes = {Axis::linspace("t2", 0.0, 0.5, 61), Axis::linspace("v", 0.0, 4.0, 61)};
      plan.solver = SolverKind::selected;
      const auto n = static_cast<std::size_t>(tb.n_sites);
      plan.states = {0, n / 4, n / 2, 3 * n / 4};
      break;
    }
    case Experiment::fig3_4: {
      ContinuumSpec c;
      c.v0 = 30.0;
      c.n_wells = paper ? 500 : 100;
      c.m_grid = paper ? 80000 : 16000;
      plan.base = c;
      plan.axes = {Axis::linspace("v1", 0.0, default_v1_max(c.v0, c.alpha), 61)};
      plan.solver = SolverKind::lowest;
      plan.k = static_cast<std::size_t>(c.n_wells);
      break;
    }
    case Experiment::fig5: {
      ContinuumSpec c;
      c.n_wells = paper ? 500 : 100;
      c.m_grid = paper ? 80000 : 16000;
      plan.base = c;
      plan.axes = {Axis::linspace("alpha_factor", 0.3, 1.5, 61),
                   Axis::linspace("v0_v1", 0.5, 5.0, 61)};
      plan.solver = SolverKind::lowest;
      plan.k = 1;
      break;
    }
    case Experiment::fig6: {
      QuenchSpec q;
      q.lattice.v0 = 2.0;
      q.lattice.trap_omega = 1e-7;
      q.lattice.n_wells = paper ? 500 : 100;
      q.lattice.m_grid = paper ? 80000 : 16000;
      q.t_final = 1.0;
      plan.base = q;
      plan.axes = {Axis{"alpha", {golden_alpha, units::pi / 2}}, Axis::linspace("v1", 0.0, 2.0, 21)};
      plan.solver = SolverKind::lowest;
      break;
    }
  }
  return plan;
}

IprGrid run_custom(const SweepPlan& plan) {
  plan.validate();
  IprGrid grid;
  for (const auto& a : plan.axes) grid.axes.push_back({a.name, a.values});
  grid.states = reported_states(plan);
  grid.dim = problem_dim(plan);
  grid.metadata["experiment"] = to_string(plan.kind);

  const std::size_t cells = grid.cell_count();
  const std::size_t ns = grid.states.size();
  grid.rows.resize(cells * ns);
  std::vector<std::exception_ptr> failures(cells);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t cell = next++; cell < cells; cell = next++) {
      std::vector<double> coords(plan.axes.size());
      std::size_t rem = cell;
      for (std::size_t a = plan.axes.size(); a-- > 0;) {
        coords[a] = plan.axes[a].values[rem % plan.axes[a].values.size()];
        rem /= plan.axes[a].values.size();
      }
      try {
        run_cell(plan, coords, grid.states, grid.rows.data() + cell * ns);
      } catch (...) {
        failures[cell] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::min(plan.workers, cells);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  // report the failure of the lowest cell so errors do not depend on timing
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return grid;
}

IprGrid run_fig1(const SweepPlan& plan) {
  if (plan.kind != Experiment::fig1) throw ParameterError("run_fig1 needs a fig1 plan");
  return run_custom(plan);
}

IprGrid run_fig2(const SweepPlan& plan) {
  if (plan.kind != Experiment::fig2) throw ParameterError("run_fig2 needs a fig2 plan");
  return run_custom(plan);
}

IprGrid run_fig3_4(const SweepPlan& plan) {
  if (plan.kind != Experiment::fig3_4) throw ParameterError("run_fig3_4 needs a fig3_4 plan");
  IprGrid grid = run_custom(plan);
  const auto& c = std::get<ContinuumSpec>(plan.base);
  if (c.v0 > 0) {
    const auto d = duality_point(c.alpha, c.v0);
    grid.metadata["duality.t_est"] = fmt(d.t_est);
    grid.metadata["duality.v_eff_per_v1"] = fmt(d.v_eff_per_v1);
    grid.metadata["duality.v1_star"] = fmt(d.v1_star);
  }
  return grid;
}

Fig5Result run_fig5(const SweepPlan& plan) {
  if (plan.kind != Experiment::fig5) throw ParameterError("run_fig5 needs a fig5 plan");
  Fig5Result out{run_custom(plan), {}};
  const auto& base = std::get<ContinuumSpec>(plan.base);
  for (const auto& a : plan.axes) {
    if (a.name != "alpha_factor" && a.name != "alpha") continue;
    for (double x : a.values) {
      ContinuumSpec s = base;
      apply_axis(s, a.name, x);
      out.boundary.push_back({s.alpha / golden_alpha, s.alpha, duality_boundary(s.alpha)});
    }
  }
  return out;
}

IprGrid run_fig6(const SweepPlan& plan) {
  if (plan.kind != Experiment::fig6) throw ParameterError("run_fig6 needs a fig6 plan");
  IprGrid grid = run_custom(plan);
  const auto& q = std::get<QuenchSpec>(plan.base);
  grid.metadata["quench.t_final"] = fmt(q.t_final);
  grid.metadata["quench.trap_omega"] = fmt(q.lattice.trap_omega);
  return grid;
}

const char* to_string(Experiment kind) {
  switch (kind) {
    case Experiment::fig1: return "fig1";
    case Experiment::fig2: return "fig2";
    case Experiment::fig3_4: return "fig3-4";
    case Experiment::fig5: return "fig5";
    case Experiment::fig6: return "fig6";
    case Experiment::custom: return "custom";
  }
  return "unknown";
}

}  // namespace qploc
