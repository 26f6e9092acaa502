#include "qploc/model.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "qploc/error.hpp"

namespace qploc {

namespace {

void require(bool ok, const char* field, const std::string& rule) {
  if (!ok) throw ParameterError(std::string(field) + " " + rule);
}

std::vector<double> aa_diagonal(const TightBindingSpec& spec) {
  const auto n = static_cast<std::size_t>(spec.n_sites);
  std::vector<double> diag(n);
  const double k = 2.0 * units::pi * spec.alpha;
  for (std::size_t i = 0; i < n; ++i)
    diag[i] = spec.v * std::cos(k * static_cast<double>(i + 1) + spec.phase);
  return diag;
}

}  // namespace

void TightBindingSpec::validate() const {
  require(n_sites >= 2, "n_sites", "must be >= 2");
  require(std::isfinite(t1) && t1 > 0, "t1", "must be finite and > 0");
  require(std::isfinite(t2) && t2 >= 0, "t2", "must be finite and >= 0");
  require(std::isfinite(v) && v >= 0, "v", "must be finite and >= 0");
  require(std::isfinite(alpha) && alpha > 0, "alpha", "must be finite and > 0");
  require(std::isfinite(phase), "phase", "must be finite");
}

void ContinuumSpec::validate() const {
  require(n_wells >= 1, "n_wells", "must be >= 1");
  require(m_grid >= 8 * n_wells, "m_grid", "must be >= 8 * n_wells");
  require(std::isfinite(v0), "v0", "must be finite");
  require(std::isfinite(v1), "v1", "must be finite");
  require(std::isfinite(alpha) && alpha > 0, "alpha", "must be finite and > 0");
  require(std::isfinite(phase), "phase", "must be finite");
  require(std::isfinite(trap_omega) && trap_omega >= 0, "trap_omega", "must be finite and >= 0");
}

double ContinuumSpec::potential(double x) const noexcept {
  const double c = half_amplitude ? 0.5 : 1.0;
  const double kx = 2.0 * units::k_lattice * x;
  const double centre = 0.5 * box_length();
  return c * v0 * std::cos(kx) + c * v1 * std::cos(alpha * kx + phase) +
         trap_omega * (x - centre) * (x - centre);
}

BandedSymMatrix build_aa(const TightBindingSpec& spec) {
  spec.validate();
  if (spec.t2 != 0.0) throw ParameterError("t2 must be 0 for the Aubry-Andre chain");
  const auto n = static_cast<std::size_t>(spec.n_sites);
  return BandedSymMatrix(aa_diagonal(spec), {std::vector<double>(n - 1, spec.t1)});
}

BandedSymMatrix build_t1t2(const TightBindingSpec& spec) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.n_sites);
  return BandedSymMatrix(aa_diagonal(spec),
                         {std::vector<double>(n - 1, spec.t1), std::vector<double>(n - 2, spec.t2)});
}

BandedSymMatrix build_continuum(const ContinuumSpec& spec) {
  spec.validate();
  const auto m = static_cast<std::size_t>(spec.m_grid);
  const double k = spec.kinetic_scale();
  std::vector<double> diag(m);
  for (std::size_t j = 0; j < m; ++j)
    diag[j] = 2.0 * k + spec.potential(spec.position(static_cast<std::int64_t>(j)));
  return BandedSymMatrix(std::move(diag), {std::vector<double>(m - 1, -k)});
}

}  // namespace qploc
