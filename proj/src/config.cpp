#include "qploc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qploc/error.hpp"

#ifndef QPLOC_VERSION
#define QPLOC_VERSION "0.0.0"
#endif

namespace qploc {

namespace fs = std::filesystem;

namespace {

const std::set<std::string> run_keys = {"workers", "threshold", "scale", "amplitude", "name", "output"};
const std::vector<std::string> tb_params = {"n_sites", "t1", "t2", "v", "alpha", "phase"};
const std::vector<std::string> continuum_params = {"n_wells", "m_grid", "v0", "v1", "alpha", "phase",
                                                   "trap_omega"};
const std::vector<std::string> quench_extra = {"t_final", "n_samples", "n_basis"};
const std::set<std::string> plan_keys = {"model", "axes", "solver", "k", "states", "tol"};
const std::set<std::string> tb_axes = {"t1", "t2", "v", "alpha", "alpha_factor", "phase"};
const std::set<std::string> continuum_axes = {"v0", "v1", "v0_v1", "alpha", "alpha_factor", "phase",
                                              "trap_omega"};
// informational sections written into sidecars
const std::set<std::string> passive_sections = {"build", "grid"};

struct Value {
  std::string text;
  std::size_t line;
  std::string key;  // "section.key" for messages
};

[[noreturn]] void bad(const Value& v, const std::string& what) { throw ConfigError(v.key, v.line, what); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_atom(const std::string& s) {
  if (s == "pi") return units::pi;
  if (s == "golden") return golden_alpha;
  double v = 0;
  const char* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, v);
  if (r.ec != std::errc{} || r.ptr != end) return std::nullopt;
  return v;
}

// Numbers, the constants pi and golden, and products / quotients of them
// such as "pi/2" or "0.5*golden".
double parse_real(const Value& v, const std::string& text) {
  std::string s = trim(text);
  double result = 1.0;
  std::size_t start = 0;
  char op = '*';
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] != '*' && s[i] != '/') continue;
    const auto atom = parse_atom(trim(s.substr(start, i - start)));
    if (!atom) bad(v, "expected a number, got '" + text + "'");
    result = op == '*' ? result * *atom : result / *atom;
    if (i < s.size()) op = s[i];
    start = i + 1;
  }
  if (!std::isfinite(result)) bad(v, "value must be finite");
  return result;
}

double parse_real(const Value& v) { return parse_real(v, v.text); }

std::int64_t parse_int(const Value& v, const std::string& text, std::int64_t min) {
  const std::string s = trim(text);
  std::int64_t out = 0;
  const char* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, out);
  if (r.ec != std::errc{} || r.ptr != end) bad(v, "expected an integer, got '" + text + "'");
  if (out < min) bad(v, "must be >= " + std::to_string(min));
  return out;
}

std::int64_t parse_int(const Value& v, std::int64_t min) { return parse_int(v, v.text, min); }

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out;
}

std::string join_numbers(const std::vector<double>& xs) {
  std::vector<std::string> parts;
  for (double x : xs) parts.push_back(format_number(x));
  return join(parts);
}

Experiment experiment_for(Command cmd) {
  switch (cmd) {
    case Command::fig1: return Experiment::fig1;
    case Command::fig2: return Experiment::fig2;
    case Command::fig3_4: return Experiment::fig3_4;
    case Command::fig5: return Experiment::fig5;
    case Command::quench: return Experiment::fig6;
    case Command::solve:
    case Command::custom: return Experiment::custom;
  }
  return Experiment::custom;
}

std::string model_name(const SweepPlan& plan) {
  if (std::holds_alternative<ContinuumSpec>(plan.base)) return "continuum";
  if (std::holds_alternative<QuenchSpec>(plan.base)) return "quench";
  return plan.tb_model == TightBindingModel::aa ? "aa" : "t1t2";
}

const char* solver_name(SolverKind s) {
  switch (s) {
    case SolverKind::full: return "full";
    case SolverKind::lowest: return "lowest";
    case SolverKind::selected: return "selected";
  }
  return "full";
}

ContinuumSpec& lattice_of(SweepPlan& plan) {
  if (auto* q = std::get_if<QuenchSpec>(&plan.base)) return q->lattice;
  return std::get<ContinuumSpec>(plan.base);
}

void set_model(SweepPlan& plan, Command cmd, const Value& v) {
  const std::string& m = v.text;
  const bool free = cmd == Command::solve || cmd == Command::custom;
  const std::string current = model_name(plan);
  if (m == "aa" || m == "t1t2") {
    if (current == "continuum" || current == "quench") {
      if (!free) bad(v, "model must be " + current + " for this command");
    }
    if (!std::holds_alternative<TightBindingSpec>(plan.base)) plan.base = TightBindingSpec{};
    plan.tb_model = m == "aa" ? TightBindingModel::aa : TightBindingModel::t1t2;
  } else if (m == "continuum" || m == "quench") {
    if (m == current) return;
    if (!free) bad(v, "model must be " + current + " for this command");
    if (m == "continuum") {
      ContinuumSpec c;
      plan.base = c;
      plan.solver = SolverKind::lowest;
      plan.k = static_cast<std::size_t>(c.n_wells);
    } else {
      QuenchSpec q;
      q.lattice.trap_omega = 1e-7;
      plan.base = q;
    }
    plan.axes.clear();
    plan.states.clear();
  } else {
    bad(v, "model must be one of aa, t1t2, continuum, quench");
  }
}

void set_scalar(SweepPlan& plan, const std::string& key, const Value& v) {
  if (auto* tb = std::get_if<TightBindingSpec>(&plan.base)) {
    if (key == "n_sites") tb->n_sites = parse_int(v, 2);
    else apply_axis(*tb, key, parse_real(v));
    return;
  }
  if (auto* q = std::get_if<QuenchSpec>(&plan.base)) {
    if (key == "t_final") { q->t_final = parse_real(v); return; }
    if (key == "n_samples") { q->n_samples = parse_int(v, 1); return; }
    if (key == "n_basis") { q->n_basis = parse_int(v, 0); return; }
  }
  ContinuumSpec& c = lattice_of(plan);
  if (key == "n_wells") c.n_wells = parse_int(v, 1);
  else if (key == "m_grid") c.m_grid = parse_int(v, 8);
  else apply_axis(c, key, parse_real(v));
}

std::vector<std::string> scalar_keys(const SweepPlan& plan) {
  if (std::holds_alternative<TightBindingSpec>(plan.base)) return tb_params;
  auto keys = continuum_params;
  if (std::holds_alternative<QuenchSpec>(plan.base))
    keys.insert(keys.end(), quench_extra.begin(), quench_extra.end());
  return keys;
}

const std::set<std::string>& axis_names(const SweepPlan& plan) {
  if (std::holds_alternative<TightBindingSpec>(plan.base)) return tb_axes;
  return continuum_axes;
}

std::string scalar_value(const SweepPlan& plan, const std::string& key) {
  if (const auto* tb = std::get_if<TightBindingSpec>(&plan.base)) {
    if (key == "n_sites") return std::to_string(tb->n_sites);
    if (key == "t1") return format_number(tb->t1);
    if (key == "t2") return format_number(tb->t2);
    if (key == "v") return format_number(tb->v);
    if (key == "alpha") return format_number(tb->alpha);
    return format_number(tb->phase);
  }
  if (const auto* q = std::get_if<QuenchSpec>(&plan.base)) {
    if (key == "t_final") return format_number(q->t_final);
    if (key == "n_samples") return std::to_string(q->n_samples);
    if (key == "n_basis") return std::to_string(q->n_basis);
  }
  const ContinuumSpec& c = std::holds_alternative<QuenchSpec>(plan.base)
                               ? std::get<QuenchSpec>(plan.base).lattice
                               : std::get<ContinuumSpec>(plan.base);
  if (key == "n_wells") return std::to_string(c.n_wells);
  if (key == "m_grid") return std::to_string(c.m_grid);
  if (key == "v0") return format_number(c.v0);
  if (key == "v1") return format_number(c.v1);
  if (key == "alpha") return format_number(c.alpha);
  if (key == "phase") return format_number(c.phase);
  return format_number(c.trap_omega);
}

bool is_swept(const SweepPlan& plan, const std::string& key) {
  auto covers = [&](const std::string& axis) {
    if (axis == key) return true;
    if (axis == "v0_v1") return key == "v0" || key == "v1";
    if (axis == "alpha_factor") return key == "alpha";
    return key == "alpha_factor" && axis == "alpha";
  };
  return std::any_of(plan.axes.begin(), plan.axes.end(), [&](const Axis& a) { return covers(a.name); });
}

bool known_section_key(const std::string& key) {
  if (plan_keys.count(key)) return true;
  for (const auto* list : {&tb_params, &continuum_params, &quench_extra})
    if (std::find(list->begin(), list->end(), key) != list->end()) return true;
  for (const char* suffix : {"_values", "_range"}) {
    const std::string sfx = suffix;
    if (key.size() > sfx.size() && key.compare(key.size() - sfx.size(), sfx.size(), sfx) == 0) {
      const std::string axis = key.substr(0, key.size() - sfx.size());
      if (tb_axes.count(axis) || continuum_axes.count(axis) || axis == "t_final") return true;
    }
  }
  return false;
}

}  // namespace

const char* version() noexcept { return QPLOC_VERSION; }

const char* to_string(Command cmd) {
  switch (cmd) {
    case Command::fig1: return "fig1";
    case Command::fig2: return "fig2";
    case Command::fig3_4: return "fig3-4";
    case Command::fig5: return "fig5";
    case Command::quench: return "quench";
    case Command::solve: return "solve";
    case Command::custom: return "custom";
  }
  return "unknown";
}

std::optional<Command> parse_command(const std::string& name) {
  for (Command c : {Command::fig1, Command::fig2, Command::fig3_4, Command::fig5, Command::quench,
                    Command::solve, Command::custom})
    if (name == to_string(c)) return c;
  return std::nullopt;
}

double RunConfig::effective_threshold() const {
  return threshold ? *threshold : default_threshold(problem_dim(plan));
}

RunConfig parse_config(Command cmd, const std::string& file_text, const std::vector<std::string>& overrides,
                       const std::optional<std::string>& env_workers) {
  const std::string section = to_string(cmd);
  std::map<std::string, std::map<std::string, Value>> merged;
  auto put = [&](const std::string& sec, const std::string& key, const std::string& text, std::size_t line) {
    merged[sec][key] = Value{trim(text), line, sec + "." + key};
  };

  if (env_workers) put("run", "workers", *env_workers, 0);
  for (const auto& e : parse_ini(file_text)) {
    const bool command_section = parse_command(e.section).has_value();
    if (e.section == "run") {
      if (!run_keys.count(e.key)) throw ConfigError("run." + e.key, e.line, "unknown key");
    } else if (command_section) {
      if (!known_section_key(e.key)) throw ConfigError(e.section + "." + e.key, e.line, "unknown key");
    } else if (!passive_sections.count(e.section)) {
      throw ConfigError("", e.line, "unknown section [" + e.section + "]");
    }
    put(e.section, e.key, e.value, e.line);
  }
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError(o, 0, "override must look like key=value");
    std::string key = trim(o.substr(0, eq));
    std::string sec = run_keys.count(key) ? "run" : section;
    if (const auto dot = key.find('.'); dot != std::string::npos) {
      sec = key.substr(0, dot);
      key = key.substr(dot + 1);
    }
    if (sec == "run" ? !run_keys.count(key) : (sec != section || !known_section_key(key)))
      throw ConfigError(sec + "." + key, 0, "unknown key on the command line");
    put(sec, key, o.substr(eq + 1), 0);
  }

  auto& run = merged["run"];
  auto& sec = merged[section];
  auto take = [](std::map<std::string, Value>& m, const std::string& key) -> std::optional<Value> {
    auto it = m.find(key);
    if (it == m.end()) return std::nullopt;
    Value v = it->second;
    m.erase(it);
    return v;
  };

  RunConfig cfg;
  cfg.command = cmd;
  cfg.name = section;
  if (auto v = take(run, "scale")) {
    if (v->text == "desk") cfg.scale = Scale::desk;
    else if (v->text == "paper") cfg.scale = Scale::paper;
    else bad(*v, "scale must be desk or paper");
  }
  if (auto v = take(run, "amplitude")) {
    if (v->text == "half") cfg.half_amplitude = true;
    else if (v->text == "full") cfg.half_amplitude = false;
    else bad(*v, "amplitude must be half or full");
  }
  if (auto v = take(run, "workers")) cfg.workers = static_cast<std::size_t>(parse_int(*v, 1));
  if (auto v = take(run, "threshold")) {
    if (v->text != "auto") {
      const double t = parse_real(*v);
      if (!(t > 0 && t <= 1)) bad(*v, "threshold must lie in (0, 1]");
      cfg.threshold = t;
    }
  }
  if (auto v = take(run, "name")) {
    if (v->text.empty() || v->text.find('/') != std::string::npos) bad(*v, "name must be a plain file stem");
    cfg.name = v->text;
  }
  if (auto v = take(run, "output")) {
    if (v->text.empty()) bad(*v, "output directory must not be empty");
    cfg.output_dir = v->text;
  }

  SweepPlan& plan = cfg.plan;
  plan = default_plan(experiment_for(cmd), cfg.scale);
  if (cmd == Command::solve) plan.axes.clear();
  if (auto v = take(sec, "model")) set_model(plan, cmd, *v);

  const bool continuum = !std::holds_alternative<TightBindingSpec>(plan.base);
  if (continuum) lattice_of(plan).half_amplitude = cfg.half_amplitude;

  // Axes: the names, then their values.
  bool v1_axis_explicit = false;
  if (auto v = take(sec, "axes")) {
    std::vector<Axis> axes;
    for (const auto& name : split_list(v->text)) {
      if (!axis_names(plan).count(name) && !(name == "t_final" && std::holds_alternative<QuenchSpec>(plan.base)))
        bad(*v, "'" + name + "' cannot be swept for model " + model_name(plan));
      const auto old = std::find_if(plan.axes.begin(), plan.axes.end(), [&](const Axis& a) { return a.name == name; });
      axes.push_back(old != plan.axes.end() ? *old : Axis{name, {}});
    }
    if (axes.size() > 2) bad(*v, "at most 2 axes");
    plan.axes = std::move(axes);
  }
  for (auto& axis : plan.axes) {
    auto values = take(sec, axis.name + "_values");
    auto range = take(sec, axis.name + "_range");
    if (values && range) bad(*range, "give either " + axis.name + "_values or " + axis.name + "_range");
    if (values) {
      axis.values.clear();
      for (const auto& item : split_list(values->text)) axis.values.push_back(parse_real(*values, item));
      if (axis.values.empty()) bad(*values, "empty value list");
    } else if (range) {
      const auto parts = split_list(range->text);
      if (parts.size() != 3) bad(*range, "range must be 'lo, hi, count'");
      const auto count = parse_int(*range, parts[2], 2);
      axis = Axis::linspace(axis.name, parse_real(*range, parts[0]), parse_real(*range, parts[1]),
                            static_cast<std::size_t>(count));
    } else if (axis.values.empty()) {
      throw ConfigError(section + "." + axis.name + "_values", 0, "axis '" + axis.name + "' needs values or a range");
    }
    if (axis.name == "v1") v1_axis_explicit = values || range;
  }

  // Scalar parameters of the base spec.
  bool n_changed = false;
  for (const auto& key : scalar_keys(plan)) {
    auto v = take(sec, key);
    if (!v) continue;
    if (is_swept(plan, key)) bad(*v, "'" + key + "' is swept; set its _values or _range instead");
    try {
      set_scalar(plan, key, *v);
    } catch (const ParameterError& e) {
      bad(*v, e.what());
    }
    n_changed = n_changed || key == "n_sites" || key == "n_wells";
  }

  // Defaults that follow other parameters unless set explicitly.
  if (cmd == Command::fig3_4 && !v1_axis_explicit) {
    for (auto& axis : plan.axes)
      if (axis.name == "v1") {
        const auto& c = std::get<ContinuumSpec>(plan.base);
        if (c.v0 > 0) axis = Axis::linspace("v1", 0.0, default_v1_max(c.v0, c.alpha), axis.values.size());
      }
  }
  if (auto v = take(sec, "solver")) {
    if (std::holds_alternative<QuenchSpec>(plan.base)) bad(*v, "quench runs have no solver choice");
    if (v->text == "full") plan.solver = SolverKind::full;
    else if (v->text == "lowest") plan.solver = SolverKind::lowest;
    else if (v->text == "selected") plan.solver = SolverKind::selected;
    else bad(*v, "solver must be full, lowest or selected");
  }
  if (auto v = take(sec, "k")) {
    plan.k = static_cast<std::size_t>(parse_int(*v, 1));
  } else if (n_changed && cmd != Command::fig5 && std::holds_alternative<ContinuumSpec>(plan.base)) {
    plan.k = static_cast<std::size_t>(std::get<ContinuumSpec>(plan.base).n_wells);
  }
  if (auto v = take(sec, "states")) {
    plan.states.clear();
    for (const auto& item : split_list(v->text))
      plan.states.push_back(static_cast<std::size_t>(parse_int(*v, item, 0)));
  } else if (n_changed && cmd == Command::fig2) {
    const auto n = static_cast<std::size_t>(std::get<TightBindingSpec>(plan.base).n_sites);
    plan.states = {0, n / 4, n / 2, 3 * n / 4};
  }
  if (auto v = take(sec, "tol")) {
    const double t = parse_real(*v);
    if (!(t > 0 && t < 1e-3)) bad(*v, "tol must lie in (0, 1e-3)");
    plan.solver_options.tol = t;
  }
  plan.workers = cfg.workers;

  // Anything left is valid somewhere but not for this model.
  if (!sec.empty()) bad(sec.begin()->second, "not a parameter of model " + model_name(plan));
  try {
    plan.validate();
  } catch (const ParameterError& e) {
    throw ConfigError("", 0, e.what());
  }
  return cfg;
}

RunConfig load_config(Command cmd, const std::optional<fs::path>& file, const std::vector<std::string>& overrides) {
  std::string text;
  if (file) {
    std::ifstream in(*file, std::ios::binary);
    if (!in) throw IoError(file->string(), "cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  std::optional<std::string> env;
  if (const char* w = std::getenv("QPLOC_WORKERS"); w && *w) env = w;
  return parse_config(cmd, text, overrides, env);
}

Sidecar RunConfig::describe() const {
  Sidecar out;
  Sidecar::Section run{"run", {}};
  run.entries = {{"scale", scale == Scale::paper ? "paper" : "desk"},
                 {"amplitude", half_amplitude ? "half" : "full"},
                 {"workers", std::to_string(workers)},
                 {"threshold", threshold ? format_number(*threshold) : "auto"},
                 {"name", name},
                 {"output", output_dir.generic_string()}};
  out.sections.push_back(std::move(run));

  Sidecar::Section sec{to_string(command), {}};
  sec.entries.emplace_back("model", model_name(plan));
  for (const auto& key : scalar_keys(plan))
    if (!is_swept(plan, key)) sec.entries.emplace_back(key, scalar_value(plan, key));
  std::vector<std::string> names;
  for (const auto& a : plan.axes) names.push_back(a.name);
  sec.entries.emplace_back("axes", join(names));
  for (const auto& a : plan.axes) sec.entries.emplace_back(a.name + "_values", join_numbers(a.values));
  if (!std::holds_alternative<QuenchSpec>(plan.base)) {
    sec.entries.emplace_back("solver", solver_name(plan.solver));
    if (plan.solver == SolverKind::lowest) sec.entries.emplace_back("k", std::to_string(plan.k));
    std::vector<std::string> st;
    for (auto s : plan.states) st.push_back(std::to_string(s));
    if (!st.empty()) sec.entries.emplace_back("states", join(st));
  }
  sec.entries.emplace_back("tol", format_number(plan.solver_options.tol));
  out.sections.push_back(std::move(sec));

  out.sections.push_back({"build", {{"version", version()}}});
  return out;
}

RunResult execute(const RunConfig& config) {
  RunResult out;
  switch (config.command) {
    case Command::fig1: out.grid = run_fig1(config.plan); break;
    case Command::fig2: out.grid = run_fig2(config.plan); break;
    case Command::fig3_4: out.grid = run_fig3_4(config.plan); break;
    case Command::fig5: {
      auto r = run_fig5(config.plan);
      out.grid = std::move(r.grid);
      out.boundary = std::move(r.boundary);
      break;
    }
    case Command::quench: out.grid = run_fig6(config.plan); break;
    case Command::solve:
    case Command::custom: out.grid = run_custom(config.plan); break;
  }
  return out;
}

std::vector<fs::path> write_outputs(const RunConfig& config, const RunResult& result) {
  Sidecar side = config.describe();
  Sidecar::Section grid{"grid", {{"dim", std::to_string(result.grid.dim)}}};
  for (const auto& [k, v] : result.grid.metadata) grid.entries.emplace_back(k, v);
  side.sections.push_back(std::move(grid));

  auto written = write_grid(result.grid, config.output_dir, config.name, side);
  if (!result.grid.axes.empty()) {
    const auto report = summarize(result.grid, config.effective_threshold());
    for (auto& p : write_report(report, config.output_dir, config.name)) written.push_back(p);
  }
  if (config.command == Command::fig5)
    written.push_back(write_boundary(result.boundary, config.output_dir, config.name));
  return written;
}

}  // namespace qploc
