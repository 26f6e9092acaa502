#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qploc/diagnostics.hpp"
#include "qploc/eig.hpp"
#include "qploc/model.hpp"

namespace qploc {

using ComplexState = std::vector<std::complex<double>>;

// Sudden release of the harmonic trap from a lattice + trap ground state.
struct QuenchSpec {
  ContinuumSpec lattice;  // trap_omega > 0: the preparation trap
  double t_final = 1.0;   // hbar / Er
  std::int64_t n_samples = 11;
  std::int64_t n_basis = 0;  // 0: 4 * n_wells

  void validate() const;
  std::size_t basis_size() const noexcept;
};

// Largest tolerated 1 - sum |c_i|^2 when expanding in a truncated basis.
inline constexpr double completeness_tolerance = 1e-6;

// Unit-norm lowest eigenvector of the lattice + trap Hamiltonian.
std::vector<double> prepare_ground_state(const ContinuumSpec& spec,
                                         const SolverOptions& opts = {});

struct Evolution {
  std::vector<double> times;
  std::vector<ComplexState> states;
  // 1 - sum |c_i|^2 of the initial state in the propagation basis
  double completeness_deficit = 0.0;
};

// psi(T) = sum_i c_i exp(-i E_i T) phi_i over the given eigenbasis. Throws
// TruncationError when the basis misses more than completeness_tolerance of
// the norm.
Evolution evolve(std::span<const std::complex<double>> psi0, const Spectrum& basis,
                 std::span<const double> times);
Evolution evolve(std::span<const double> psi0, const Spectrum& basis,
                 std::span<const double> times);
// Convenience form that diagonalizes h_post for its lowest n_basis states.
Evolution evolve(std::span<const double> psi0, const BandedSymMatrix& h_post,
                 std::span<const double> times, std::size_t n_basis,
                 const SolverOptions& opts = {});

// <psi|H|psi> / <psi|psi>
double energy_expectation(const BandedSymMatrix& h, std::span<const std::complex<double>> psi);

struct QuenchPoint {
  double ipr_initial;
  double ipr_final;
  double completeness_deficit;
};

// Prepare with trap, evolve trap-free to t_final, report the IPR of the
// final state.
QuenchPoint quench_point(const QuenchSpec& spec, const SolverOptions& opts = {});

// IPR after the release for each secondary depth: a one-axis "v1" grid with
// the single state slot 0 and no energies.
IprGrid quench_ipr_curve(const QuenchSpec& spec, std::span<const double> v1_axis,
                         const SolverOptions& opts = {});

}  // namespace qploc
