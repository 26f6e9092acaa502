#include "qploc/eig.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "qploc/error.hpp"

namespace qploc {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

double spectral_scale(const BandedSymMatrix& h) {
  const auto g = h.gershgorin();
  return std::max({std::abs(g.lo), std::abs(g.hi), std::numeric_limits<double>::min()});
}

double spectral_range(const BandedSymMatrix& h) {
  const auto g = h.gershgorin();
  const double r = g.hi - g.lo;
  return r > 0 ? r : spectral_scale(h);
}

// LU factorization with partial pivoting of (H - shift I) for a symmetric band
// matrix with half-bandwidth b. Row i of the working array holds columns
// i - b .. i + 2b, enough room for the fill created by row swaps.
class ShiftedBandLU {
 public:
  ShiftedBandLU(const BandedSymMatrix& h, double shift, double pivot_guard)
      : n_(h.dim()), b_(static_cast<std::size_t>(h.bandwidth())), width_(3 * b_ + 1),
        a_(n_ * width_, 0.0), mult_(n_ * b_, 0.0), pivot_(n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      at(i, i) = h.diag()[i] - shift;
      for (std::size_t d = 1; d <= b_; ++d) {
        if (i + d < n_) {
          const double e = h.band(static_cast<int>(d))[i];
          at(i + d, i) = e;
          at(i, i + d) = e;
        }
      }
    }
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t last = std::min(n_ - 1, k + b_);
      std::size_t p = k;
      for (std::size_t r = k + 1; r <= last; ++r)
        if (std::abs(at(r, k)) > std::abs(at(p, k))) p = r;
      pivot_[k] = p;
      const std::size_t cend = std::min(n_ - 1, k + 2 * b_);
      if (p != k)
        for (std::size_t c = k; c <= cend; ++c) std::swap(at(k, c), at(p, c));
      if (std::abs(at(k, k)) < pivot_guard) at(k, k) = at(k, k) < 0 ? -pivot_guard : pivot_guard;
      const double piv = at(k, k);
      for (std::size_t r = k + 1; r <= last; ++r) {
        const double l = at(r, k) / piv;
        mult_[k * b_ + (r - k - 1)] = l;
        at(r, k) = 0.0;
        if (l == 0.0) continue;
        for (std::size_t c = k + 1; c <= cend; ++c) at(r, c) -= l * at(k, c);
      }
    }
  }

  void solve(std::span<double> x) const {
    for (std::size_t k = 0; k < n_; ++k) {
      if (pivot_[k] != k) std::swap(x[k], x[pivot_[k]]);
      const std::size_t last = std::min(n_ - 1, k + b_);
      for (std::size_t r = k + 1; r <= last; ++r) x[r] -= mult_[k * b_ + (r - k - 1)] * x[k];
    }
    for (std::size_t i = n_; i-- > 0;) {
      double s = x[i];
      const std::size_t cend = std::min(n_ - 1, i + 2 * b_);
      for (std::size_t c = i + 1; c <= cend; ++c) s -= at(i, c) * x[c];
      x[i] = s / at(i, i);
    }
  }

 private:
  double& at(std::size_t i, std::size_t c) { return a_[i * width_ + (c + b_ - i)]; }
  double at(std::size_t i, std::size_t c) const { return a_[i * width_ + (c + b_ - i)]; }

  std::size_t n_, b_, width_;
  std::vector<double> a_;
  std::vector<double> mult_;
  std::vector<std::size_t> pivot_;
};

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double residual_norm(const BandedSymMatrix& h, double lambda, std::span<const double> v,
                     std::vector<double>& work) {
  work.resize(v.size());
  h.multiply(v, work);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = work[i] - lambda * v[i];
    s += r * r;
  }
  return std::sqrt(s);
}

// Removes the components along columns [first, last) of `basis`.
void orthogonalize(std::span<double> x, const std::vector<double>& basis, std::size_t dim,
                   std::size_t first, std::size_t last) {
  for (std::size_t j = first; j < last; ++j) {
    const double* q = basis.data() + j * dim;
    double dot = 0.0;
    for (std::size_t i = 0; i < dim; ++i) dot += q[i] * x[i];
    for (std::size_t i = 0; i < dim; ++i) x[i] -= dot * q[i];
  }
}

// Eigenvectors for known eigenvalues (ascending). `labels` are the positions
// in the full spectrum, used for seeding and error reporting.
Spectrum inverse_iteration(const BandedSymMatrix& h, std::vector<double> eigenvalues,
                           std::span<const std::size_t> labels, const SolverOptions& opts) {
  const std::size_t n = h.dim();
  const std::size_t k = eigenvalues.size();
  const double range = spectral_range(h);
  const double scale = std::max(h.max_abs(), std::numeric_limits<double>::min());
  const double pivot_guard = eps * scale;
  const double cluster_gap = opts.cluster_gap * range;
  const double residual_tol = opts.tol * range;

  Spectrum out;
  out.dim = n;
  out.eigenvalues = std::move(eigenvalues);
  out.vectors.assign(n * k, 0.0);

  std::vector<double> work;
  std::size_t cluster_start = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const double lambda = out.eigenvalues[j];
    if (j == 0 || lambda - out.eigenvalues[j - 1] > cluster_gap) cluster_start = j;

    std::span<double> x(out.vectors.data() + j * n, n);
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(labels[j]));
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    for (auto& v : x) v = uniform(rng);
    orthogonalize(x, out.vectors, n, cluster_start, j);
    double nx = norm2(x);
    for (auto& v : x) v /= nx;

    const ShiftedBandLU lu(h, lambda, pivot_guard);
    double residual = std::numeric_limits<double>::infinity();
    for (int step = 0; step < opts.max_inverse_steps; ++step) {
      lu.solve(x);
      orthogonalize(x, out.vectors, n, cluster_start, j);
      nx = norm2(x);
      if (!(nx > 0) || !std::isfinite(nx))
        throw SolverError("inverse iteration broke down", labels[j]);
      for (auto& v : x) v /= nx;
      residual = residual_norm(h, lambda, x, work);
      if (step >= 1 && residual <= residual_tol) break;
    }
    // second pass keeps the cluster orthogonal to working precision
    if (j > cluster_start) {
      orthogonalize(x, out.vectors, n, cluster_start, j);
      nx = norm2(x);
      if (!(nx > 0.5)) throw SolverError("cluster reorthogonalization failed", labels[j]);
      for (auto& v : x) v /= nx;
      residual = residual_norm(h, lambda, x, work);
    }
    if (!(residual <= residual_tol))
      throw SolverError("inverse iteration did not converge (residual " +
                            std::to_string(residual) + ")",
                        labels[j]);
    // deterministic sign: largest-magnitude component positive
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
    if (x[imax] < 0)
      for (auto& v : x) v = -v;
    out.residual_bound = std::max(out.residual_bound, residual);
  }
  return out;
}

// Bisection on inertia counts for the eigenvalues at the requested positions.
std::vector<double> bisect_eigenvalues(const BandedSymMatrix& h,
                                       std::span<const std::size_t> indices) {
  const std::size_t n = h.dim();
  const auto g = h.gershgorin();
  const double scale = spectral_scale(h);
  const double pad = 2.0 * eps * scale * static_cast<double>(n) + eps * scale;
  const double width_tol = 4.0 * eps * scale;

  // Every evaluated shift with its count; counts are monotone in the shift.
  std::map<double, std::size_t> counts;
  counts.emplace(g.lo - pad, 0);
  counts.emplace(g.hi + pad, n);
  auto count_at = [&](double sigma) {
    auto it = counts.find(sigma);
    if (it != counts.end()) return it->second;
    const std::size_t c = h.inertia_below(sigma);
    counts.emplace(sigma, c);
    return c;
  };

  std::vector<double> out;
  out.reserve(indices.size());
  for (std::size_t idx : indices) {
    // tightest known bracket: count(lo) <= idx < count(hi)
    double lo = counts.begin()->first, hi = counts.rbegin()->first;
    for (const auto& [sigma, c] : counts) {
      if (c <= idx) {
        lo = sigma;
      } else {
        hi = sigma;
        break;
      }
    }
    while (hi - lo > width_tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (count_at(mid) <= idx)
        lo = mid;
      else
        hi = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

void check_indices(const BandedSymMatrix& h, std::span<const std::size_t> indices) {
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= h.dim())
      throw ParameterError("eigenvalue index " + std::to_string(indices[i]) + " out of range");
    if (i > 0 && indices[i] <= indices[i - 1])
      throw ParameterError("eigenvalue indices must be strictly increasing");
  }
}

}  // namespace

BandedSymMatrix tridiagonalize(const BandedSymMatrix& h) {
  const std::size_t n = h.dim();
  if (h.bandwidth() == 1) return h;
  if (n < 3) return BandedSymMatrix(std::vector<double>(h.diag().begin(), h.diag().end()),
                                    {std::vector<double>(h.band(1).begin(), h.band(1).end())});

  // Lower band storage with room for one extra diagonal (the bulge).
  std::vector<std::vector<double>> a(4);
  a[0].assign(h.diag().begin(), h.diag().end());
  a[1].assign(h.band(1).begin(), h.band(1).end());
  a[2].assign(h.band(2).begin(), h.band(2).end());
  a[3].assign(n > 3 ? n - 3 : 0, 0.0);
  auto get = [&](std::size_t i, std::size_t j) -> double {
    if (i < j) std::swap(i, j);
    const std::size_t d = i - j;
    return d <= 3 ? a[d][j] : 0.0;
  };
  auto set = [&](std::size_t i, std::size_t j, double v) {
    if (i < j) std::swap(i, j);
    const std::size_t d = i - j;
    if (d <= 3) a[d][j] = v;
  };

  // Rotation in the (p, p+1) plane that zeroes H(p+1, target).
  auto rotate = [&](std::size_t p, std::size_t target) {
    const std::size_t q = p + 1;
    const double xp = get(p, target), xq = get(q, target);
    const double rho = std::hypot(xp, xq);
    if (rho == 0.0 || xq == 0.0) return;
    const double c = xp / rho, s = -xq / rho;
    const std::size_t kmin = p >= 3 ? p - 3 : 0;
    const std::size_t kmax = std::min(n - 1, p + 4);
    for (std::size_t k = kmin; k <= kmax; ++k) {
      if (k == p || k == q) continue;
      const double hp = get(p, k), hq = get(q, k);
      set(p, k, c * hp - s * hq);
      set(q, k, s * hp + c * hq);
    }
    set(q, target, 0.0);
    const double app = get(p, p), apq = get(p, q), aqq = get(q, q);
    set(p, p, c * c * app - 2.0 * c * s * apq + s * s * aqq);
    set(q, q, s * s * app + 2.0 * c * s * apq + c * c * aqq);
    set(p, q, c * s * (app - aqq) + (c * c - s * s) * apq);
  };

  for (std::size_t j = 0; j + 2 < n; ++j) {
    rotate(j + 1, j);
    // chase the bulge at (r, r - 3) down the band
    for (std::size_t r = j + 4; r < n; r += 2) {
      if (get(r, r - 3) == 0.0) break;
      rotate(r - 1, r - 3);
    }
  }
  return BandedSymMatrix(std::move(a[0]), {std::move(a[1])});
}

std::vector<double> tridiagonal_eigenvalues(const BandedSymMatrix& t, int max_shifts) {
  if (t.bandwidth() != 1) throw ParameterError("tridiagonal_eigenvalues needs bandwidth 1");
  const std::size_t n = t.dim();
  std::vector<double> d(t.diag().begin(), t.diag().end());
  std::vector<double> e(n, 0.0);
  std::copy(t.band(1).begin(), t.band(1).end(), e.begin());

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == max_shifts) throw SolverError("implicit QL did not converge", l);
        // Wilkinson-type shift from the leading 2x2 block
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

Spectrum solve_full(const BandedSymMatrix& h, const SolverOptions& opts) {
  if (h.dim() > opts.full_ceiling)
    throw ParameterError("dimension " + std::to_string(h.dim()) +
                         " exceeds the full-solve ceiling " + std::to_string(opts.full_ceiling));
  auto eigenvalues = tridiagonal_eigenvalues(tridiagonalize(h), opts.max_ql_shifts);
  std::vector<std::size_t> labels(h.dim());
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  return inverse_iteration(h, std::move(eigenvalues), labels, opts);
}

Spectrum solve_indices(const BandedSymMatrix& h, std::span<const std::size_t> indices,
                       const SolverOptions& opts) {
  check_indices(h, indices);
  return inverse_iteration(h, bisect_eigenvalues(h, indices), indices, opts);
}

Spectrum solve_lowest(const BandedSymMatrix& h, std::size_t k, const SolverOptions& opts) {
  if (k < 1 || k > h.dim())
    throw ParameterError("k = " + std::to_string(k) + " outside [1, " + std::to_string(h.dim()) +
                         "]");
  std::vector<std::size_t> indices(k);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  return solve_indices(h, indices, opts);
}

Spectrum dense_oracle(const BandedSymMatrix& h) {
  const std::size_t n = h.dim();
  if (n > dense_oracle_ceiling)
    throw ParameterError("dense oracle limited to dim <= " +
                         std::to_string(dense_oracle_ceiling));
  std::vector<double> a = h.dense();
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  double frob = 0.0;
  for (double x : a) frob += x * x;
  frob = std::sqrt(frob);
  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
  };

  constexpr int max_sweeps = 50;
  int sweep = 0;
  while (off_mass() >= 1e-14 * frob && frob > 0) {
    if (sweep++ == max_sweeps) throw SolverError("Jacobi sweeps exhausted", 0);
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        // A <- J^T A J on rows/columns p, q
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = a[q * n + p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });
  Spectrum out;
  out.dim = n;
  out.eigenvalues.resize(n);
  out.vectors.resize(n * n);
  std::vector<double> work;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.eigenvalues[j] = a[src * n + src];
    for (std::size_t i = 0; i < n; ++i) out.vectors[j * n + i] = v[i * n + src];
    out.residual_bound =
        std::max(out.residual_bound, residual_norm(h, out.eigenvalues[j], out.vector(j), work));
  }
  return out;
}

}  // namespace qploc
