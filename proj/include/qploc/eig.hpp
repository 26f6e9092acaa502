#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qploc/banded.hpp"

namespace qploc {

// Ascending eigenvalues with orthonormal eigenvectors stored column by column.
struct Spectrum {
  std::size_t dim = 0;
  std::vector<double> eigenvalues;
  std::vector<double> vectors;  // dim * size(), column-major
  // max over returned pairs of |H v - lambda v|_2
  double residual_bound = 0.0;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  std::span<const double> vector(std::size_t i) const noexcept {
    return {vectors.data() + i * dim, dim};
  }
};

struct SolverOptions {
  // Residual tolerance relative to the spectral range.
  double tol = 1e-11;
  std::size_t full_ceiling = 5000;
  // Eigenvalues closer than cluster_gap * range are orthogonalized against
  // each other during inverse iteration.
  double cluster_gap = 1e-6;
  int max_ql_shifts = 40;
  int max_inverse_steps = 5;
};

// Every eigenpair. Eigenvalues from implicit-shift QL on the tridiagonal form
// (bandwidth-2 input is first reduced by Givens bulge chasing), eigenvectors
// by inverse iteration on the original band matrix.
Spectrum solve_full(const BandedSymMatrix& h, const SolverOptions& opts = {});

// The k algebraically smallest eigenpairs: inertia-count bisection plus
// inverse iteration.
Spectrum solve_lowest(const BandedSymMatrix& h, std::size_t k, const SolverOptions& opts = {});

// Eigenpairs at the given positions of the ascending spectrum. Indices must be
// strictly increasing and < dim.
Spectrum solve_indices(const BandedSymMatrix& h, std::span<const std::size_t> indices,
                       const SolverOptions& opts = {});

inline constexpr std::size_t dense_oracle_ceiling = 256;

// Cyclic Jacobi on the dense matrix. Slow; for validation only.
Spectrum dense_oracle(const BandedSymMatrix& h);

// Orthogonal reduction to tridiagonal form (eigenvalues preserved). Returns
// the diagonal and the sub-diagonal as a bandwidth-1 matrix.
BandedSymMatrix tridiagonalize(const BandedSymMatrix& h);

// Eigenvalues of a bandwidth-1 matrix by implicit QL, ascending.
std::vector<double> tridiagonal_eigenvalues(const BandedSymMatrix& t, int max_shifts = 40);

}  // namespace qploc
