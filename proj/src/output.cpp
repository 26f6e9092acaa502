#include "qploc/output.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qploc/error.hpp"
#include "qploc/ini.hpp"

namespace qploc {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError(path.parent_path().string(), ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << text;
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) throw ParameterError("bad number '" + s + "' in grid file");
  return v;
}

std::string optional_number(const std::optional<double>& x) { return x ? format_number(*x) : ""; }

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_ini(const Sidecar& sidecar) {
  std::string text;
  for (const auto& s : sidecar.sections) {
    text += "[" + s.name + "]\n";
    for (const auto& [k, v] : s.entries) text += k + (v.empty() ? " =\n" : " = " + v + "\n");
    text += "\n";
  }
  return text;
}

std::string grid_to_csv(const IprGrid& grid) {
  grid.check_complete();
  std::string out;
  for (const auto& a : grid.axes) out += a.name + ",";
  out += "state,energy,ipr\n";
  for (const auto& r : grid.rows) {
    for (double c : r.coords) out += format_number(c) + ",";
    out += std::to_string(r.state) + "," + optional_number(r.energy) + "," + format_number(r.ipr) + "\n";
  }
  return out;
}

IprGrid grid_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("empty grid file");
  const auto header = split_csv_line(line);
  if (header.size() < 3 || header[header.size() - 3] != "state" ||
      header[header.size() - 2] != "energy" || header.back() != "ipr")
    throw ParameterError("grid header must end with state,energy,ipr");
  const std::size_t n_axes = header.size() - 3;

  IprGrid grid;
  for (std::size_t a = 0; a < n_axes; ++a) grid.axes.push_back({header[a], {}});
  std::vector<std::size_t> states;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) throw ParameterError("grid row has the wrong field count");
    IprGrid::Row r;
    for (std::size_t a = 0; a < n_axes; ++a) r.coords.push_back(parse_number(f[a]));
    r.state = static_cast<std::size_t>(parse_number(f[n_axes]));
    if (!f[n_axes + 1].empty()) r.energy = parse_number(f[n_axes + 1]);
    r.ipr = parse_number(f[n_axes + 2]);
    grid.rows.push_back(std::move(r));
  }
  // Recover axes and states from the canonical ordering.
  for (const auto& r : grid.rows) {
    for (std::size_t a = 0; a < n_axes; ++a) {
      auto& vals = grid.axes[a].values;
      if (std::find(vals.begin(), vals.end(), r.coords[a]) == vals.end()) vals.push_back(r.coords[a]);
    }
    if (std::find(states.begin(), states.end(), r.state) == states.end()) states.push_back(r.state);
  }
  grid.states = std::move(states);
  return grid;
}

std::vector<fs::path> write_grid(const IprGrid& grid, const fs::path& dir, const std::string& stem,
                                 const Sidecar& sidecar) {
  std::vector<fs::path> written;
  const fs::path csv = dir / (stem + ".csv");
  write_file(csv, grid_to_csv(grid));
  written.push_back(csv);
  if (!sidecar.sections.empty()) {
    const fs::path meta = dir / (stem + ".meta.ini");
    write_file(meta, to_ini(sidecar));
    written.push_back(meta);
  }
  return written;
}

IprGrid read_grid(const fs::path& csv) {
  IprGrid grid = grid_from_csv(read_file(csv));
  // dim and metadata live in the sidecar when there is one
  fs::path meta = csv;
  meta.replace_extension(".meta.ini");
  if (fs::exists(meta)) {
    for (const auto& e : parse_ini(read_file(meta))) {
      if (e.section != "grid") continue;
      if (e.key == "dim") grid.dim = static_cast<std::size_t>(parse_number(e.value));
      else grid.metadata[e.key] = e.value;
    }
  }
  return grid;
}

TransitionReport summarize(const IprGrid& grid, double threshold) {
  if (grid.axes.empty() || grid.axes.size() > 2)
    throw ParameterError("summarize needs a grid with one or two axes");
  TransitionReport report;
  report.threshold = threshold;
  report.scan_axis = grid.axes.back().name;
  auto add = [&](const IprGrid& one, std::optional<double> slice) {
    for (std::size_t s = 0; s < one.states.size(); ++s)
      report.transitions.push_back({slice, one.states[s], transition_scan(one, s, threshold)});
    for (const auto& p : mobility_edge_profile(one, threshold))
      report.fractions.push_back({slice, p.value, p.localized_fraction});
  };
  if (grid.axes.size() == 1) {
    add(grid, std::nullopt);
  } else {
    report.slice_axis = grid.axes.front().name;
    for (std::size_t i = 0; i < grid.axes.front().values.size(); ++i)
      add(grid.slice(i), grid.axes.front().values[i]);
  }
  return report;
}

std::vector<fs::path> write_report(const TransitionReport& report, const fs::path& dir,
                                   const std::string& stem) {
  const std::string prefix = report.slice_axis.empty() ? "" : report.slice_axis + ",";
  auto slice_field = [](const std::optional<double>& s) { return s ? format_number(*s) + "," : std::string(); };

  std::string t = prefix + "state,transition_" + report.scan_axis + ",status\n";
  for (const auto& r : report.transitions)
    t += slice_field(r.slice) + std::to_string(r.state) + "," + optional_number(r.transition) + "," +
         (r.transition ? "transition" : "no transition") + "\n";
  std::string f = prefix + report.scan_axis + ",localized_fraction\n";
  for (const auto& r : report.fractions)
    f += slice_field(r.slice) + format_number(r.value) + "," + format_number(r.localized_fraction) + "\n";

  const fs::path tp = dir / (stem + ".transitions.csv");
  const fs::path fp = dir / (stem + ".fractions.csv");
  write_file(tp, t);
  write_file(fp, f);
  return {tp, fp};
}

fs::path write_boundary(const std::vector<BoundaryPoint>& boundary, const fs::path& dir,
                        const std::string& stem) {
  std::string text = "alpha_factor,alpha,v0\n";
  for (const auto& b : boundary)
    text += format_number(b.alpha_factor) + "," + format_number(b.alpha) + "," + optional_number(b.v0) + "\n";
  const fs::path p = dir / (stem + ".boundary.csv");
  write_file(p, text);
  return p;
}

}  // namespace qploc
