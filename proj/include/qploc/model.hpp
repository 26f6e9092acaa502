#pragma once

#include <cstdint>

#include "qploc/banded.hpp"

namespace qploc {

// Units: energies in recoil energies Er, lengths in units where 2 kL = 1,
// times in hbar / Er.
namespace units {
inline constexpr double k_lattice = 0.5;
// hbar^2 / 2m expressed in Er * length^2 (Er = hbar^2 kL^2 / 2m).
inline constexpr double kinetic_prefactor = 1.0 / (k_lattice * k_lattice);
inline constexpr double pi = 3.14159265358979323846;
// Period of the primary lattice cos(2 kL x).
inline constexpr double primary_period = pi / k_lattice;
}  // namespace units

// Inverse golden mean (sqrt(5) - 1) / 2.
inline constexpr double golden_alpha = 0.61803398874989484820;

// Parameters of the nearest / next-nearest neighbour chains. The on-site term
// is v cos(2 pi alpha n + phase) with 1-based site index n.
struct TightBindingSpec {
  double t1 = 1.0;
  double t2 = 0.0;
  double v = 0.0;
  double alpha = golden_alpha;
  double phase = 0.0;
  std::int64_t n_sites = 1000;

  // Throws ParameterError naming the offending field.
  void validate() const;
};

// Parameters of the discretized continuum problem on a hard-wall box holding
// n_wells periods of the primary lattice, sampled at x_j = j * step,
// j = 0 .. m_grid - 1.
struct ContinuumSpec {
  double v0 = 0.0;
  double v1 = 0.0;
  double alpha = golden_alpha;
  double phase = 0.0;
  std::int64_t n_wells = 100;
  std::int64_t m_grid = 16000;
  double trap_omega = 0.0;
  // true: V0/2 cos(2kL x) + V1/2 cos(2 alpha kL x + phase).
  // false: full amplitudes V0, V1.
  bool half_amplitude = true;

  void validate() const;

  double box_length() const noexcept { return static_cast<double>(n_wells) * units::primary_period; }
  double step() const noexcept { return box_length() / static_cast<double>(m_grid); }
  double position(std::int64_t j) const noexcept { return static_cast<double>(j) * step(); }
  // Finite-difference hopping scale hbar^2 / (2 m step^2) in Er.
  double kinetic_scale() const noexcept { return units::kinetic_prefactor / (step() * step()); }
  double potential(double x) const noexcept;
};

BandedSymMatrix build_aa(const TightBindingSpec& spec);
BandedSymMatrix build_t1t2(const TightBindingSpec& spec);
BandedSymMatrix build_continuum(const ContinuumSpec& spec);

}  // namespace qploc
