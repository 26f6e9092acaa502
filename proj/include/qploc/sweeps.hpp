#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qploc/diagnostics.hpp"
#include "qploc/dynamics.hpp"
#include "qploc/eig.hpp"
#include "qploc/model.hpp"

namespace qploc {

enum class Experiment { fig1, fig2, fig3_4, fig5, fig6, custom };
enum class Scale { desk, paper };
enum class TightBindingModel { aa, t1t2 };

enum class SolverKind {
  full,      // every eigenpair
  lowest,    // the k smallest
  selected,  // the tracked indices only, by bisection
};

struct Axis {
  std::string name;
  std::vector<double> values;

  // count evenly spaced points from lo to hi inclusive (count >= 2)
  static Axis linspace(std::string name, double lo, double hi, std::size_t count);
};

struct SweepPlan {
  Experiment kind = Experiment::custom;
  std::variant<TightBindingSpec, ContinuumSpec, QuenchSpec> base = TightBindingSpec{};
  TightBindingModel tb_model = TightBindingModel::t1t2;
  std::vector<Axis> axes;
  SolverKind solver = SolverKind::full;
  std::size_t k = 0;
  // State indices to report; empty means every state the solver returns.
  std::vector<std::size_t> states;
  std::size_t workers = 1;
  SolverOptions solver_options;

  // Throws ParameterError for incompatible kind/base/axes combinations.
  void validate() const;
};

// Parameter names accepted as axes. Tight-binding: t1 t2 v alpha
// alpha_factor phase. Continuum and quench: v0 v1 v0_v1 alpha alpha_factor
// phase trap_omega (v0_v1 sets both depths; alpha_factor multiplies the
// inverse golden mean). Quench also accepts t_final.
void apply_axis(TightBindingSpec& spec, const std::string& name, double value);
void apply_axis(ContinuumSpec& spec, const std::string& name, double value);
void apply_axis(QuenchSpec& spec, const std::string& name, double value);

// Matrix dimension of one cell: n_sites or m_grid.
std::size_t problem_dim(const SweepPlan& plan);

// Documented defaults for each experiment at the given scale.
SweepPlan default_plan(Experiment kind, Scale scale = Scale::desk);

// Generic grid execution: one build/solve/IPR pipeline per cell, cells spread
// over plan.workers threads, rows written by cell index.
IprGrid run_custom(const SweepPlan& plan);

IprGrid run_fig1(const SweepPlan& plan);
IprGrid run_fig2(const SweepPlan& plan);
// Adds the duality overlay (t_est, v_eff_per_v1, v1_star) to the metadata.
IprGrid run_fig3_4(const SweepPlan& plan);

struct BoundaryPoint {
  double alpha_factor;
  double alpha;
  std::optional<double> v0;  // depth where v1_star == v0 == v1
};
struct Fig5Result {
  IprGrid grid;
  std::vector<BoundaryPoint> boundary;
};
Fig5Result run_fig5(const SweepPlan& plan);

// Quench curves: IPR after the trap release, per (alpha, v1) cell.
IprGrid run_fig6(const SweepPlan& plan);

// Upper end of the default V1 axis for the continuum sweeps:
// min(v0, 4 v1_star), so both the duality point and V1 = V0 stay in view.
double default_v1_max(double v0, double alpha);

const char* to_string(Experiment kind);

}  // namespace qploc
