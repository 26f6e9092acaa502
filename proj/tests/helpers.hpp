#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qploc/banded.hpp"

namespace qploc::test {

// Symmetric band matrix with entries uniform in [-1, 1].
inline BandedSymMatrix random_banded(std::size_t n, int bandwidth, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> d(n);
  for (auto& x : d) x = u(rng);
  std::vector<std::vector<double>> bands;
  for (int b = 1; b <= bandwidth; ++b) {
    std::vector<double> e(n - static_cast<std::size_t>(b));
    for (auto& x : e) x = u(rng);
    bands.push_back(std::move(e));
  }
  return BandedSymMatrix(std::move(d), std::move(bands));
}

inline double dot(const double* a, const double* b, std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace qploc::test
