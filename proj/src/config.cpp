#include "qsplit/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace qsplit {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(line, "expected a number, got '" + v + "'");
  }
}

long parse_int(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(line, "expected an integer, got '" + v + "'");
  }
}

const std::vector<std::string> kKnownColumns = {
    "l2_norm", "mass",  "energy", "lz",   "l2_error",
    "entropy", "s_x1",  "s_x2",   "xc_1", "xc_2",
    "probe_re", "probe_im"};

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream is(text);
  std::string line;
  std::string section;
  int line_no = 0;
  std::vector<int> grid_points;
  std::vector<double> grid_widths;
  int grid_line = 0;
  std::vector<std::pair<std::string, int>> model_lines;

  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "malformed section header");
      section = line.substr(1, line.size() - 2);
      if (section != "experiment" && section != "grid" && section != "model" &&
          section != "output" && section != "initial")
        throw ConfigError(line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError(line_no, "key outside of any section");

    if (section == "experiment") {
      if (key == "preset") cfg.preset = value;
      else if (key == "scheme") {
        try {
          cfg.scheme = scheme_from_string(value);
        } catch (const std::exception& e) {
          throw ConfigError(line_no, e.what());
        }
      } else if (key == "dt") cfg.dt = parse_double(value, line_no);
      else if (key == "steps") cfg.steps = static_cast<int>(parse_int(value, line_no));
      else if (key == "final_time") cfg.final_time = parse_double(value, line_no);
      else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(value, line_no));
      else throw ConfigError(line_no, "unknown key '" + key + "' in [experiment]");
    } else if (section == "grid") {
      if (key == "points") {
        grid_points.clear();
        for (const auto& tok : split_ws(value))
          grid_points.push_back(static_cast<int>(parse_int(tok, line_no)));
        grid_line = line_no;
      } else if (key == "half_widths") {
        grid_widths.clear();
        for (const auto& tok : split_ws(value))
          grid_widths.push_back(parse_double(tok, line_no));
        grid_line = line_no;
      } else {
        throw ConfigError(line_no, "unknown key '" + key + "' in [grid]");
      }
    } else if (section == "model") {
      if (key == "pivot") {
        cfg.pivot = static_cast<int>(parse_int(value, line_no));
      } else {
        cfg.model_params[key] = parse_double(value, line_no);
        model_lines.emplace_back(key, line_no);
      }
    } else if (section == "output") {
      if (key == "directory") cfg.out_dir = value;
      else if (key == "record_stride") {
        cfg.record_stride = static_cast<int>(parse_int(value, line_no));
        if (cfg.record_stride < 1) throw ConfigError(line_no, "record_stride must be >= 1");
      } else if (key == "diagnostics") {
        cfg.diagnostics = split_ws(value);
        for (const auto& c : cfg.diagnostics) {
          bool known = false;
          for (const auto& k : kKnownColumns)
            if (k == c) known = true;
          if (!known) throw ConfigError(line_no, "unknown diagnostic column '" + c + "'");
        }
      } else if (key == "snapshots") {
        if (value == "none") cfg.snapshots = SnapshotPolicy::none;
        else if (value == "final") cfg.snapshots = SnapshotPolicy::final_only;
        else if (value == "all") cfg.snapshots = SnapshotPolicy::every_record;
        else throw ConfigError(line_no, "snapshots must be none|final|all");
      } else {
        throw ConfigError(line_no, "unknown key '" + key + "' in [output]");
      }
    } else if (section == "initial") {
      if (key == "kind") {
        if (value == "builtin") cfg.initial = InitialKind::builtin;
        else if (value == "snapshot") cfg.initial = InitialKind::snapshot;
        else throw ConfigError(line_no, "initial kind must be builtin|snapshot");
      } else if (key == "path") {
        cfg.initial_path = value;
      } else {
        throw ConfigError(line_no, "unknown key '" + key + "' in [initial]");
      }
    }
  }

  if (cfg.preset.empty()) throw ConfigError(line_no, "missing experiment.preset");
  if (!grid_points.empty() || !grid_widths.empty()) {
    if (grid_points.size() != grid_widths.size())
      throw ConfigError(grid_line, "grid points/half_widths length mismatch");
    try {
      cfg.grid = GridSpec::make(grid_points, grid_widths);
    } catch (const std::exception& e) {
      throw ConfigError(grid_line, e.what());
    }
  }
  // model-parameter names are validated against the preset here so the error
  // still carries a line anchor
  for (const auto& [key, ln] : model_lines) {
    try {
      make_preset(cfg.preset, {{key, cfg.model_params.at(key)}});
    } catch (const std::exception& e) {
      throw ConfigError(ln, e.what());
    }
  }
  return cfg;
}

void validate_config(ExperimentConfig& cfg) {
  const Preset preset = make_preset(cfg.preset, cfg.model_params);
  bool scheme_ok = false;
  for (Scheme s : preset.schemes)
    if (s == cfg.scheme) scheme_ok = true;
  if (!scheme_ok)
    throw ConfigError(0, "scheme " + to_string(cfg.scheme) +
                             " is not valid for preset " + cfg.preset);
  if (!cfg.dt) cfg.dt = preset.default_dt;
  if (!(*cfg.dt > 0)) throw ConfigError(0, "dt must be positive");
  if (!cfg.steps) {
    if (cfg.final_time)
      cfg.steps = static_cast<int>(std::llround(*cfg.final_time / *cfg.dt));
    else
      cfg.steps = preset.default_steps;
  }
  if (*cfg.steps < 0) throw ConfigError(0, "steps must be >= 0");
  if (cfg.final_time &&
      std::abs(*cfg.dt * *cfg.steps - *cfg.final_time) > *cfg.dt + 1e-12)
    throw ConfigError(0, "dt * steps differs from final_time by more than one step");
  if (cfg.grid && cfg.grid->dims() != preset.default_grid.dims())
    throw ConfigError(0, "grid dimension does not match the preset");
  if (cfg.pivot) {
    if (preset.family != ModelFamily::transport)
      throw ConfigError(0, "pivot override applies to transport presets only");
    if (*cfg.pivot < 1 || *cfg.pivot > preset.default_grid.dims())
      throw ConfigError(0, "pivot out of range");
  }

  if (cfg.diagnostics.empty()) cfg.diagnostics = {"l2_norm"};
  for (const auto& col : cfg.diagnostics) {
    const int dims = cfg.grid ? cfg.grid->dims() : preset.default_grid.dims();
    const bool two_d = dims == 2;
    if (col == "energy" && preset.family != ModelFamily::qm)
      throw ConfigError(0, "column energy requires a Schroedinger preset");
    if (col == "l2_error" && !preset.exact_at)
      throw ConfigError(0, "column l2_error requires a preset with a reference solution");
    if ((col == "lz" || col == "s_x1" || col == "s_x2" || col == "xc_1" ||
         col == "xc_2") &&
        !(two_d && preset.family == ModelFamily::qm))
      throw ConfigError(0, "column " + col + " requires a 2D Schroedinger preset");
    if (col == "entropy" &&
        !(preset.family == ModelFamily::fp || preset.family == ModelFamily::kfp))
      throw ConfigError(0, "column entropy requires a kinetic preset");
  }
  if (cfg.initial == InitialKind::snapshot && cfg.initial_path.empty())
    throw ConfigError(0, "initial.kind = snapshot requires initial.path");
}

std::string ExperimentConfig::dump() const {
  std::ostringstream os;
  os.precision(17);
  os << "[experiment]\n";
  os << "preset = " << preset << "\n";
  os << "scheme = " << to_string(scheme) << "\n";
  if (dt) os << "dt = " << *dt << "\n";
  if (steps) os << "steps = " << *steps << "\n";
  if (final_time) os << "final_time = " << *final_time << "\n";
  os << "seed = " << seed << "\n";
  if (grid) {
    os << "\n[grid]\npoints =";
    for (int a = 0; a < grid->dims(); ++a) os << " " << grid->points[a];
    os << "\nhalf_widths =";
    for (int a = 0; a < grid->dims(); ++a) os << " " << grid->half_widths[a];
    os << "\n";
  }
  if (!model_params.empty() || pivot) {
    os << "\n[model]\n";
    for (const auto& [k, v] : model_params) os << k << " = " << v << "\n";
    if (pivot) os << "pivot = " << *pivot << "\n";
  }
  os << "\n[output]\n";
  os << "directory = " << out_dir << "\n";
  os << "record_stride = " << record_stride << "\n";
  os << "diagnostics =";
  for (const auto& c : diagnostics) os << " " << c;
  os << "\n";
  os << "snapshots = "
     << (snapshots == SnapshotPolicy::none
             ? "none"
             : snapshots == SnapshotPolicy::final_only ? "final" : "all")
     << "\n";
  os << "\n[initial]\n";
  os << "kind = " << (initial == InitialKind::builtin ? "builtin" : "snapshot") << "\n";
  if (!initial_path.empty()) os << "path = " << initial_path << "\n";
  return os.str();
}

}  // namespace qsplit
