#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qploc {

// sum |v|^4 / (sum |v|^2)^2. Throws DomainError for an all-zero vector.
double ipr(std::span<const double> v);
double ipr(std::span<const std::complex<double>> v);

// Nearest-neighbour hopping of a deep lattice of depth v0 (in Er), from the
// harmonic-well Wannier estimate (4/sqrt(pi)) s^{3/4} exp(-2 sqrt(s)).
double aa_hopping_estimate(double v0_over_er);

// Effective on-site modulation (v1/2) exp(-alpha^2 / sqrt(v0)) seen by a
// Gaussian Wannier state.
double aa_potential_estimate(double v1, double alpha, double v0_over_er);

struct DualityEstimate {
  double t_est;         // Er
  double v_eff_per_v1;  // V / V1
  double v1_star;       // Er, secondary depth where V = 2 t
};

DualityEstimate duality_point(double alpha, double v0_over_er);

// Depth V0 (= V1) at which the estimated duality point equals the lattice
// depth, found by bisection on [v0_lo, v0_hi]. Empty when the bracket does
// not contain a sign change.
std::optional<double> duality_boundary(double alpha, double v0_lo = 0.1, double v0_hi = 30.0,
                                       double tol = 1e-6);

// Long-format grid of IPR values over 0-2 parameter axes and state indices.
struct IprGrid {
  struct Axis {
    std::string name;
    std::vector<double> values;
  };
  struct Row {
    std::vector<double> coords;  // one per axis
    std::size_t state = 0;
    std::optional<double> energy;
    double ipr = 0.0;
  };

  std::vector<Axis> axes;
  std::vector<std::size_t> states;
  // Hilbert-space dimension of the solved problems; the IPR lower bound is
  // 1 / dim.
  std::size_t dim = 0;
  // cell-major: axis 0 slowest, then axis 1, then state
  std::vector<Row> rows;
  std::map<std::string, std::string> metadata;

  std::size_t cell_count() const noexcept;
  const Row& at(std::size_t cell, std::size_t state_slot) const {
    return rows[cell * states.size() + state_slot];
  }

  // Throws ParameterError unless every cell is present exactly once in
  // canonical order and every IPR is in [1/dim, 1].
  void check_complete() const;

  // One-axis grid at the given index of axis 0 of a two-axis grid.
  IprGrid slice(std::size_t axis0_index) const;
};

// Smallest axis value at which the state's IPR exceeds the threshold and stays
// above it for the rest of the axis. `state_slot` indexes grid.states.
std::optional<double> transition_scan(const IprGrid& grid, std::size_t state_slot,
                                      double threshold);

struct EdgePoint {
  double value;
  double localized_fraction;
};

// Fraction of tracked states above the threshold at each axis value.
std::vector<EdgePoint> mobility_edge_profile(const IprGrid& grid, double threshold);

// 10 / dim: an order of magnitude above the extended-state scale 3 / (2 dim).
inline double default_threshold(std::size_t dim) { return 10.0 / static_cast<double>(dim); }

}  // namespace qploc
