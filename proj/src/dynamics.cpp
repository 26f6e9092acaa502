#include "qploc/dynamics.hpp"

#include <cmath>
#include <string>

#include "qploc/diagnostics.hpp"
#include "qploc/error.hpp"

namespace qploc {

void QuenchSpec::validate() const {
  lattice.validate();
  if (!(t_final > 0) || !std::isfinite(t_final)) throw ParameterError("t_final must be > 0");
  if (n_samples < 1) throw ParameterError("n_samples must be >= 1");
  if (n_basis < 0 || n_basis > lattice.m_grid)
    throw ParameterError("n_basis must lie in [0, m_grid]");
}

std::size_t QuenchSpec::basis_size() const noexcept {
  if (n_basis > 0) return static_cast<std::size_t>(n_basis);
  return static_cast<std::size_t>(std::min<std::int64_t>(4 * lattice.n_wells, lattice.m_grid));
}

std::vector<double> prepare_ground_state(const ContinuumSpec& spec, const SolverOptions& opts) {
  if (!(spec.trap_omega > 0)) throw ParameterError("ground-state preparation needs trap_omega > 0");
  const auto sp = solve_lowest(build_continuum(spec), 1, opts);
  const auto v = sp.vector(0);
  return {v.begin(), v.end()};
}

Evolution evolve(std::span<const std::complex<double>> psi0, const Spectrum& basis,
                 std::span<const double> times) {
  const std::size_t n = basis.dim;
  if (psi0.size() != n) throw ParameterError("state length does not match the basis dimension");
  double norm0 = 0.0;
  for (const auto& z : psi0) norm0 += std::norm(z);
  if (std::abs(norm0 - 1.0) > 1e-8) throw ParameterError("initial state must have unit norm");

  const std::size_t k = basis.size();
  std::vector<std::complex<double>> coeff(k);
  double captured = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto phi = basis.vector(i);
    std::complex<double> c = 0.0;
    for (std::size_t j = 0; j < n; ++j) c += phi[j] * psi0[j];
    coeff[i] = c;
    captured += std::norm(c);
  }
  Evolution out;
  out.completeness_deficit = 1.0 - captured;
  if (!(out.completeness_deficit < completeness_tolerance))
    throw TruncationError("propagation basis of " + std::to_string(k) +
                              " states misses a norm fraction of " +
                              std::to_string(out.completeness_deficit) + "; raise n_basis",
                          out.completeness_deficit);

  out.times.assign(times.begin(), times.end());
  out.states.reserve(times.size());
  for (double t : times) {
    ComplexState psi(n, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      const auto c = coeff[i] * std::polar(1.0, -basis.eigenvalues[i] * t);
      const auto phi = basis.vector(i);
      for (std::size_t j = 0; j < n; ++j) psi[j] += c * phi[j];
    }
    out.states.push_back(std::move(psi));
  }
  return out;
}

Evolution evolve(std::span<const double> psi0, const Spectrum& basis,
                 std::span<const double> times) {
  const ComplexState z(psi0.begin(), psi0.end());
  return evolve(std::span<const std::complex<double>>(z), basis, times);
}

Evolution evolve(std::span<const double> psi0, const BandedSymMatrix& h_post,
                 std::span<const double> times, std::size_t n_basis, const SolverOptions& opts) {
  return evolve(psi0, solve_lowest(h_post, n_basis, opts), times);
}

double energy_expectation(const BandedSymMatrix& h, std::span<const std::complex<double>> psi) {
  const std::size_t n = h.dim();
  std::vector<double> re(n), im(n), hre(n), him(n);
  for (std::size_t j = 0; j < n; ++j) {
    re[j] = psi[j].real();
    im[j] = psi[j].imag();
  }
  h.multiply(re, hre);
  h.multiply(im, him);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    num += re[j] * hre[j] + im[j] * him[j];
    den += re[j] * re[j] + im[j] * im[j];
  }
  return num / den;
}

QuenchPoint quench_point(const QuenchSpec& spec, const SolverOptions& opts) {
  spec.validate();
  const auto psi0 = prepare_ground_state(spec.lattice, opts);
  ContinuumSpec released = spec.lattice;
  released.trap_omega = 0.0;
  const auto basis = solve_lowest(build_continuum(released), spec.basis_size(), opts);
  const double t[] = {spec.t_final};
  const auto ev = evolve(psi0, basis, t);
  return {ipr(psi0), ipr(std::span<const std::complex<double>>(ev.states.front())),
          ev.completeness_deficit};
}

IprGrid quench_ipr_curve(const QuenchSpec& spec, std::span<const double> v1_axis,
                         const SolverOptions& opts) {
  IprGrid grid;
  grid.axes = {{"v1", {v1_axis.begin(), v1_axis.end()}}};
  grid.states = {0};
  grid.dim = static_cast<std::size_t>(spec.lattice.m_grid);
  for (double v1 : v1_axis) {
    QuenchSpec s = spec;
    s.lattice.v1 = v1;
    grid.rows.push_back({{v1}, 0, std::nullopt, quench_point(s, opts).ipr_final});
  }
  return grid;
}

}  // namespace qploc
