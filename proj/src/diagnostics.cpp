#include "qploc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qploc/error.hpp"
#include "qploc/model.hpp"

namespace qploc {

namespace {

template <class T>
double ipr_impl(std::span<const T> v) {
  double s2 = 0.0, s4 = 0.0;
  for (const auto& x : v) {
    const double p = std::norm(x);
    s2 += p;
    s4 += p * p;
  }
  if (!(s2 > 0)) throw DomainError("IPR of an all-zero vector");
  return s4 / (s2 * s2);
}

void require_positive_depth(double v0_over_er) {
  if (!(v0_over_er > 0) || !std::isfinite(v0_over_er))
    throw ParameterError("v0 must be finite and > 0, got " + std::to_string(v0_over_er));
}

}  // namespace

double ipr(std::span<const double> v) { return ipr_impl(v); }
double ipr(std::span<const std::complex<double>> v) { return ipr_impl(v); }

double aa_hopping_estimate(double s) {
  require_positive_depth(s);
  return 4.0 / std::sqrt(units::pi) * std::pow(s, 0.75) * std::exp(-2.0 * std::sqrt(s));
}

double aa_potential_estimate(double v1, double alpha, double s) {
  require_positive_depth(s);
  return 0.5 * v1 * std::exp(-alpha * alpha / std::sqrt(s));
}

DualityEstimate duality_point(double alpha, double s) {
  require_positive_depth(s);
  if (!std::isfinite(alpha)) throw ParameterError("alpha must be finite");
  DualityEstimate d{};
  d.t_est = aa_hopping_estimate(s);
  d.v_eff_per_v1 = aa_potential_estimate(1.0, alpha, s);
  d.v1_star = 2.0 * d.t_est / d.v_eff_per_v1;
  return d;
}

std::optional<double> duality_boundary(double alpha, double lo, double hi, double tol) {
  if (!(lo > 0) || !(hi > lo)) throw ParameterError("duality_boundary needs 0 < lo < hi");
  auto f = [&](double v0) { return duality_point(alpha, v0).v1_star - v0; };
  double flo = f(lo), fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0)) return std::nullopt;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::size_t IprGrid::cell_count() const noexcept {
  std::size_t c = 1;
  for (const auto& a : axes) c *= a.values.size();
  return c;
}

void IprGrid::check_complete() const {
  const std::size_t cells = cell_count();
  if (rows.size() != cells * states.size())
    throw ParameterError("grid has " + std::to_string(rows.size()) + " rows, expected " +
                         std::to_string(cells * states.size()));
  const double floor = dim > 0 ? 1.0 / static_cast<double>(dim) : 0.0;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    std::size_t rem = cell;
    std::vector<std::size_t> idx(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
      idx[a] = rem % axes[a].values.size();
      rem /= axes[a].values.size();
    }
    for (std::size_t s = 0; s < states.size(); ++s) {
      const Row& r = at(cell, s);
      if (r.state != states[s] || r.coords.size() != axes.size())
        throw ParameterError("grid row out of order at cell " + std::to_string(cell));
      for (std::size_t a = 0; a < axes.size(); ++a)
        if (r.coords[a] != axes[a].values[idx[a]])
          throw ParameterError("grid coordinate mismatch at cell " + std::to_string(cell));
      // small slack for rounding in the sums
      if (!(r.ipr >= floor * (1 - 1e-12) && r.ipr <= 1 + 1e-12))
        throw ParameterError("IPR " + std::to_string(r.ipr) + " outside [1/dim, 1]");
    }
  }
}

IprGrid IprGrid::slice(std::size_t i0) const {
  if (axes.size() != 2) throw ParameterError("slice needs a two-axis grid");
  if (i0 >= axes[0].values.size()) throw ParameterError("slice index out of range");
  IprGrid out;
  out.axes = {axes[1]};
  out.states = states;
  out.dim = dim;
  out.metadata = metadata;
  out.metadata[axes[0].name] = std::to_string(axes[0].values[i0]);
  const std::size_t n1 = axes[1].values.size();
  for (std::size_t c = 0; c < n1; ++c) {
    for (std::size_t s = 0; s < states.size(); ++s) {
      Row r = at(i0 * n1 + c, s);
      r.coords = {r.coords[1]};
      out.rows.push_back(std::move(r));
    }
  }
  return out;
}

std::optional<double> transition_scan(const IprGrid& grid, std::size_t slot, double threshold) {
  if (grid.axes.size() != 1) throw ParameterError("transition_scan needs a one-axis grid");
  if (slot >= grid.states.size())
    throw ParameterError("state slot " + std::to_string(slot) + " out of range");
  const auto& values = grid.axes[0].values;
  if (!std::is_sorted(values.begin(), values.end()))
    throw ParameterError("transition_scan needs a sorted axis");
  std::optional<double> found;
  for (std::size_t c = 0; c < values.size(); ++c) {
    if (grid.at(c, slot).ipr > threshold) {
      if (!found) found = values[c];
    } else {
      found.reset();
    }
  }
  return found;
}

std::vector<EdgePoint> mobility_edge_profile(const IprGrid& grid, double threshold) {
  if (grid.axes.size() != 1) throw ParameterError("mobility_edge_profile needs a one-axis grid");
  std::vector<EdgePoint> out;
  const auto& values = grid.axes[0].values;
  const std::size_t ns = grid.states.size();
  for (std::size_t c = 0; c < values.size(); ++c) {
    std::size_t localized = 0;
    for (std::size_t s = 0; s < ns; ++s)
      if (grid.at(c, s).ipr > threshold) ++localized;
    out.push_back({values[c], ns ? static_cast<double>(localized) / static_cast<double>(ns) : 0.0});
  }
  return out;
}

}  // namespace qploc
