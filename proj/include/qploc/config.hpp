#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qploc/ini.hpp"
#include "qploc/output.hpp"
#include "qploc/sweeps.hpp"

namespace qploc {

enum class Command { fig1, fig2, fig3_4, fig5, quench, solve, custom };

// "fig1", "fig2", "fig3-4", "fig5", "quench", "solve", "custom"
const char* to_string(Command cmd);
std::optional<Command> parse_command(const std::string& name);

// Library version, "major.minor.patch".
const char* version() noexcept;

struct RunConfig {
  Command command = Command::fig1;
  SweepPlan plan;
  std::filesystem::path output_dir = ".";
  std::string name;  // file stem; defaults to the command name
  std::size_t workers = 1;
  std::optional<double> threshold;  // default 10 / dim
  bool half_amplitude = true;
  Scale scale = Scale::desk;

  double effective_threshold() const;
  // Every effective setting, laid out as a config file that reproduces the
  // run, plus a [build] section with the code version.
  Sidecar describe() const;
};

// Overrides are "key=value" with key either bare (a [run] key or a key of the
// command's section) or "section.key". Precedence: defaults, then
// env_workers, then the file text, then overrides.
RunConfig parse_config(Command cmd, const std::string& file_text,
                       const std::vector<std::string>& overrides = {},
                       const std::optional<std::string>& env_workers = std::nullopt);

// Reads the file (when given) and QPLOC_WORKERS from the environment.
RunConfig load_config(Command cmd, const std::optional<std::filesystem::path>& file,
                      const std::vector<std::string>& overrides = {});

struct RunResult {
  IprGrid grid;
  std::vector<BoundaryPoint> boundary;  // fig5 only
};

RunResult execute(const RunConfig& config);

// Grid, sidecar, transition report and (fig5) boundary files under
// config.output_dir. Returns the paths written.
std::vector<std::filesystem::path> write_outputs(const RunConfig& config, const RunResult& result);

}  // namespace qploc
