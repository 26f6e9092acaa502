#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "qploc/diagnostics.hpp"
#include "qploc/sweeps.hpp"

namespace qploc {

// Ordered key/value pairs for a sidecar file, grouped by section.
struct Sidecar {
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
  };
  std::vector<Section> sections;
};

std::string to_ini(const Sidecar& sidecar);

// 17 significant digits, enough to round-trip any double.
std::string format_number(double x);

// Long-format CSV: header "<axes...>,state,energy,ipr", one row per cell and
// state in grid order. Empty energy field when none is available.
std::string grid_to_csv(const IprGrid& grid);
IprGrid grid_from_csv(const std::string& text);

// Writes <dir>/<stem>.csv and, when the sidecar is non-empty,
// <dir>/<stem>.meta.ini. Returns the paths written. Throws IoError.
std::vector<std::filesystem::path> write_grid(const IprGrid& grid, const std::filesystem::path& dir,
                                              const std::string& stem, const Sidecar& sidecar = {});

IprGrid read_grid(const std::filesystem::path& csv);

struct TransitionRecord {
  std::optional<double> slice;  // axis-0 value of a two-axis grid
  std::size_t state;
  std::optional<double> transition;
};
struct FractionRecord {
  std::optional<double> slice;
  double value;
  double localized_fraction;
};
struct TransitionReport {
  std::string slice_axis;  // empty for one-axis grids
  std::string scan_axis;
  double threshold;
  std::vector<TransitionRecord> transitions;
  std::vector<FractionRecord> fractions;
};

// Per-state transition values and localized fractions along the last axis,
// one block per value of the first axis for two-axis grids.
TransitionReport summarize(const IprGrid& grid, double threshold);

// <dir>/<stem>.transitions.csv and <dir>/<stem>.fractions.csv
std::vector<std::filesystem::path> write_report(const TransitionReport& report,
                                                const std::filesystem::path& dir,
                                                const std::string& stem);

// <dir>/<stem>.boundary.csv with columns alpha_factor,alpha,v0
std::filesystem::path write_boundary(const std::vector<BoundaryPoint>& boundary,
                                     const std::filesystem::path& dir, const std::string& stem);

}  // namespace qploc
