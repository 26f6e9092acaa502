#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qploc {

// Real symmetric matrix stored by diagonals. Only the main diagonal and the
// `bandwidth` sub-diagonals are kept; band b has dim - b entries and
// band(b)[i] is the (i + b, i) element.
class BandedSymMatrix {
 public:
  BandedSymMatrix() = default;

  // Throws ParameterError on inconsistent lengths, bandwidth outside {1, 2},
  // or non-finite entries.
  BandedSymMatrix(std::vector<double> diag, std::vector<std::vector<double>> bands);

  std::size_t dim() const noexcept { return diag_.size(); }
  int bandwidth() const noexcept { return static_cast<int>(bands_.size()); }

  std::span<const double> diag() const noexcept { return diag_; }
  std::span<const double> band(int b) const { return bands_.at(static_cast<std::size_t>(b - 1)); }

  // Element access with symmetric lookup; zero outside the band.
  double operator()(std::size_t i, std::size_t j) const noexcept;

  // Row-major dense copy, for validation only.
  std::vector<double> dense() const;

  void multiply(std::span<const double> x, std::span<double> y) const;

  // Gershgorin interval containing the whole spectrum.
  struct Bounds {
    double lo;
    double hi;
  };
  Bounds gershgorin() const noexcept;

  // max |entry|, used as the scale for pivot guards and tolerances
  double max_abs() const noexcept;

  double trace() const noexcept;

  // Number of eigenvalues strictly below sigma, from the negative pivots of
  // the banded LDL^T factorization of H - sigma I (Sylvester's law of
  // inertia). Pivots smaller than a guard proportional to max_abs() are
  // replaced by -guard.
  std::size_t inertia_below(double sigma) const;

  friend bool operator==(const BandedSymMatrix&, const BandedSymMatrix&) = default;

 private:
  std::vector<double> diag_;
  std::vector<std::vector<double>> bands_;
};

}  // namespace qploc
