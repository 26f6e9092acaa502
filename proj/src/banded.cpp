#include "qploc/banded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qploc/error.hpp"

namespace qploc {

BandedSymMatrix::BandedSymMatrix(std::vector<double> diag, std::vector<std::vector<double>> bands)
    : diag_(std::move(diag)), bands_(std::move(bands)) {
  if (diag_.empty()) throw ParameterError("banded matrix must have dim >= 1");
  if (bands_.size() < 1 || bands_.size() > 2)
    throw ParameterError("bandwidth must be 1 or 2, got " + std::to_string(bands_.size()));
  const std::size_t n = diag_.size();
  for (std::size_t b = 1; b <= bands_.size(); ++b) {
    const std::size_t want = n > b ? n - b : 0;
    if (bands_[b - 1].size() != want)
      throw ParameterError("band " + std::to_string(b) + " has length " +
                           std::to_string(bands_[b - 1].size()) + ", expected " +
                           std::to_string(want));
  }
  auto finite = [](double x) { return std::isfinite(x); };
  bool ok = std::all_of(diag_.begin(), diag_.end(), finite);
  for (const auto& band : bands_) ok = ok && std::all_of(band.begin(), band.end(), finite);
  if (!ok) throw ParameterError("banded matrix has non-finite entries");
}

double BandedSymMatrix::operator()(std::size_t i, std::size_t j) const noexcept {
  if (i < j) std::swap(i, j);
  const std::size_t b = i - j;
  if (b == 0) return diag_[i];
  if (b > bands_.size()) return 0.0;
  return bands_[b - 1][j];
}

std::vector<double> BandedSymMatrix::dense() const {
  const std::size_t n = dim();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = diag_[i];
  for (std::size_t b = 1; b <= bands_.size(); ++b) {
    for (std::size_t j = 0; j + b < n; ++j) {
      a[(j + b) * n + j] = bands_[b - 1][j];
      a[j * n + j + b] = bands_[b - 1][j];
    }
  }
  return a;
}

void BandedSymMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) y[i] = diag_[i] * x[i];
  for (std::size_t b = 1; b <= bands_.size(); ++b) {
    const auto& e = bands_[b - 1];
    for (std::size_t j = 0; j + b < n; ++j) {
      y[j + b] += e[j] * x[j];
      y[j] += e[j] * x[j + b];
    }
  }
}

BandedSymMatrix::Bounds BandedSymMatrix::gershgorin() const noexcept {
  const std::size_t n = dim();
  std::vector<double> radius(n, 0.0);
  for (std::size_t b = 1; b <= bands_.size(); ++b) {
    const auto& e = bands_[b - 1];
    for (std::size_t j = 0; j + b < n; ++j) {
      radius[j] += std::abs(e[j]);
      radius[j + b] += std::abs(e[j]);
    }
  }
  Bounds out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < n; ++i) {
    out.lo = std::min(out.lo, diag_[i] - radius[i]);
    out.hi = std::max(out.hi, diag_[i] + radius[i]);
  }
  return out;
}

double BandedSymMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double x : diag_) m = std::max(m, std::abs(x));
  for (const auto& band : bands_)
    for (double x : band) m = std::max(m, std::abs(x));
  return m;
}

double BandedSymMatrix::trace() const noexcept {
  double s = 0.0;
  for (double x : diag_) s += x;
  return s;
}

std::size_t BandedSymMatrix::inertia_below(double sigma) const {
  const std::size_t n = dim();
  const double guard = std::max(max_abs(), std::numeric_limits<double>::min()) *
                       std::numeric_limits<double>::epsilon();
  std::size_t negatives = 0;

  if (bands_.size() == 1 || n < 3) {
    // Sturm recurrence for the tridiagonal case.
    const auto& e = bands_[0];
    double d = diag_[0] - sigma;
    if (std::abs(d) < guard) d = -guard;
    if (d < 0) ++negatives;
    for (std::size_t i = 1; i < n; ++i) {
      d = (diag_[i] - sigma) - e[i - 1] * e[i - 1] / d;
      if (std::abs(d) < guard) d = -guard;
      if (d < 0) ++negatives;
    }
    return negatives;
  }

  // Pentadiagonal LDL^T. Row i of L has entries l1 = L(i, i-1), l2 = L(i, i-2);
  // only the two previous pivots and the previous row's l1 are needed.
  const auto& e1 = bands_[0];
  const auto& e2 = bands_[1];
  double d_prev2 = 0.0, d_prev1 = 0.0;  // D(i-2), D(i-1)
  double l1_prev = 0.0;                 // L(i-1, i-2)
  for (std::size_t i = 0; i < n; ++i) {
    double l2 = 0.0, l1 = 0.0;
    if (i >= 2) l2 = e2[i - 2] / d_prev2;
    if (i >= 1) {
      double a = e1[i - 1];
      if (i >= 2) a -= l2 * d_prev2 * l1_prev;
      l1 = a / d_prev1;
    }
    double d = diag_[i] - sigma;
    if (i >= 2) d -= l2 * l2 * d_prev2;
    if (i >= 1) d -= l1 * l1 * d_prev1;
    if (std::abs(d) < guard) d = -guard;
    if (d < 0) ++negatives;
    d_prev2 = d_prev1;
    d_prev1 = d;
    l1_prev = l1;
  }
  return negatives;
}

}  // namespace qploc
