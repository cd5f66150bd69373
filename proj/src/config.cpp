#include "qdr/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"

namespace qdr {

namespace {

using nlohmann::json;

std::string join_issues(const std::vector<std::string>& issues) {
  std::ostringstream out;
  out << "configuration invalid:";
  for (const auto& issue : issues) {
    out << "\n  " << issue;
  }
  return out.str();
}

struct Issues {
  std::vector<std::string> list;

  void add(const std::string& path, const std::string& message) {
    list.push_back(path + ": " + message);
  }

  void raise_if_any() const {
    if (!list.empty()) {
      throw ConfigError(list);
    }
  }
};

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed, Issues& issues) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      issues.add(path + "." + item.key(), "unknown key");
    }
  }
}

bool read_number(const json& obj, const std::string& path, const char* key,
                 bool required, double fallback, double* out, Issues& issues) {
  if (!obj.contains(key)) {
    if (required) {
      issues.add(path + "." + key, "required field is missing");
      return false;
    }
    *out = fallback;
    return true;
  }
  const json& v = obj.at(key);
  if (!v.is_number()) {
    issues.add(path + "." + key, "expected a number");
    return false;
  }
  *out = v.get<double>();
  if (!std::isfinite(*out)) {
    issues.add(path + "." + key, "must be finite");
    return false;
  }
  return true;
}

bool read_int(const json& obj, const std::string& path, const char* key,
              int fallback, int* out, Issues& issues) {
  if (!obj.contains(key)) {
    *out = fallback;
    return true;
  }
  const json& v = obj.at(key);
  if (!v.is_number_integer()) {
    issues.add(path + "." + key, "expected an integer");
    return false;
  }
  *out = v.get<int>();
  return true;
}

void parse_qubit(const json& root, ScenarioConfig& cfg, Issues& issues) {
  if (!root.contains("qubit") || !root.at("qubit").is_object()) {
    issues.add("qubit", "required object is missing");
    return;
  }
  const json& q = root.at("qubit");
  switch (cfg.qubit_type) {
    case QubitType::transmon: {
      check_keys(q, "qubit", {"E_C", "E_J", "n_g"}, issues);
      TransmonParams& p = cfg.transmon;
      read_number(q, "qubit", "E_C", true, 0.0, &p.E_C, issues);
      read_number(q, "qubit", "E_J", true, 0.0, &p.E_J, issues);
      read_number(q, "qubit", "n_g", false, 0.0, &p.n_g, issues);
      if (!(p.E_C > 0.0)) issues.add("qubit.E_C", "must be positive");
      if (!(p.E_J > 0.0)) issues.add("qubit.E_J", "must be positive");
      break;
    }
    case QubitType::majorana_transmon: {
      check_keys(q, "qubit", {"E_C", "E_J", "n_g", "E_M", "phi_x"}, issues);
      MTParams& p = cfg.mt;
      read_number(q, "qubit", "E_C", true, 0.0, &p.E_C, issues);
      read_number(q, "qubit", "E_J", true, 0.0, &p.E_J, issues);
      read_number(q, "qubit", "n_g", false, 0.0, &p.n_g, issues);
      read_number(q, "qubit", "E_M", false, 0.0, &p.E_M, issues);
      read_number(q, "qubit", "phi_x", false, 0.0, &p.phi_x, issues);
      if (!(p.E_C > 0.0)) issues.add("qubit.E_C", "must be positive");
      if (!(p.E_J > 0.0)) issues.add("qubit.E_J", "must be positive");
      if (p.E_M < 0.0) issues.add("qubit.E_M", "must be >= 0");
      break;
    }
    case QubitType::majorana_box: {
      check_keys(q, "qubit", {"E_tot", "eps_dot", "n_g", "t_L", "t_R", "phi_x"},
                 issues);
      MBParams& p = cfg.mb;
      read_number(q, "qubit", "E_tot", true, 0.0, &p.E_tot, issues);
      read_number(q, "qubit", "eps_dot", true, 0.0, &p.eps_dot, issues);
      read_number(q, "qubit", "n_g", false, 0.0, &p.n_g, issues);
      read_number(q, "qubit", "t_L", false, 0.0, &p.t_L, issues);
      read_number(q, "qubit", "t_R", false, 0.0, &p.t_R, issues);
      read_number(q, "qubit", "phi_x", false, 0.0, &p.phi_x, issues);
      if (!(p.E_tot > 0.0)) issues.add("qubit.E_tot", "must be positive");
      if (p.t_L < 0.0) issues.add("qubit.t_L", "must be >= 0");
      if (p.t_R < 0.0) issues.add("qubit.t_R", "must be >= 0");
      break;
    }
  }
}

void parse_resonator(const json& root, ScenarioConfig& cfg, Issues& issues) {
  if (!root.contains("resonator") || !root.at("resonator").is_object()) {
    issues.add("resonator", "required object is missing");
    return;
  }
  const json& r = root.at("resonator");
  check_keys(r, "resonator", {"lambda_GHz", "delta_over_g", "omega_r_GHz"},
             issues);
  ResonatorConfig& rc = cfg.resonator;
  read_number(r, "resonator", "lambda_GHz", true, 0.0, &rc.lambda_GHz, issues);
  if (rc.lambda_GHz == 0.0) {
    issues.add("resonator.lambda_GHz", "must be nonzero");
  }
  const bool has_ratio = r.contains("delta_over_g");
  const bool has_omega = r.contains("omega_r_GHz");
  if (has_ratio == has_omega) {
    issues.add("resonator",
               "exactly one of delta_over_g and omega_r_GHz must be given");
  }
  if (has_ratio) {
    double v = 0.0;
    if (read_number(r, "resonator", "delta_over_g", true, 0.0, &v, issues)) {
      rc.delta_over_g = v;
      if (v == 0.0) {
        issues.add("resonator.delta_over_g", "must be nonzero");
      }
    }
  }
  if (has_omega) {
    double v = 0.0;
    if (read_number(r, "resonator", "omega_r_GHz", true, 0.0, &v, issues)) {
      rc.omega_r_GHz = v;
      if (!(v > 0.0)) {
        issues.add("resonator.omega_r_GHz", "must be positive");
      }
    }
  }
}

void parse_numerics(const json& root, ScenarioConfig& cfg, Issues& issues) {
  if (!root.contains("numerics")) {
    return;
  }
  const json& n = root.at("numerics");
  if (!n.is_object()) {
    issues.add("numerics", "expected an object");
    return;
  }
  check_keys(n, "numerics", {"n_max", "ncp", "k_levels", "guard", "n_window"},
             issues);
  NumericsConfig& nc = cfg.numerics;
  read_int(n, "numerics", "n_max", nc.n_max, &nc.n_max, issues);
  read_int(n, "numerics", "ncp", nc.ncp, &nc.ncp, issues);
  read_int(n, "numerics", "k_levels", nc.k_levels, &nc.k_levels, issues);
  read_number(n, "numerics", "guard", false, nc.guard, &nc.guard, issues);
  read_int(n, "numerics", "n_window", nc.n_window, &nc.n_window, issues);
  if (nc.n_max < 1) issues.add("numerics.n_max", "must be >= 1");
  if (nc.ncp < 1) issues.add("numerics.ncp", "must be >= 1");
  if (nc.k_levels < 0) issues.add("numerics.k_levels", "must be >= 0");
  if (!(nc.guard > 0.0)) issues.add("numerics.guard", "must be positive");
  if (nc.n_window < 0) issues.add("numerics.n_window", "must be >= 0");
}

void parse_readout(const json& root, ScenarioConfig& cfg, Issues& issues) {
  if (!root.contains("readout")) {
    return;
  }
  const json& r = root.at("readout");
  if (!r.is_object()) {
    issues.add("readout", "expected an object");
    return;
  }
  check_keys(r, "readout",
             {"scheme", "nbar_target_ratio", "kappa_MHz", "gz_tilde_MHz",
              "target_fidelity", "tau_grid_us"},
             issues);
  ReadoutConfig& rd = cfg.readout;
  if (r.contains("scheme")) {
    if (!r.at("scheme").is_string()) {
      issues.add("readout.scheme", "expected a string");
    } else {
      const std::string s = r.at("scheme").get<std::string>();
      if (s == "dispersive") {
        rd.scheme = ReadoutScheme::dispersive;
      } else if (s == "longitudinal") {
        rd.scheme = ReadoutScheme::longitudinal;
      } else {
        issues.add("readout.scheme",
                   "must be \"dispersive\" or \"longitudinal\"");
      }
    }
  }
  read_number(r, "readout", "nbar_target_ratio", false, rd.nbar_target_ratio,
              &rd.nbar_target_ratio, issues);
  if (rd.nbar_target_ratio < 0.0) {
    issues.add("readout.nbar_target_ratio", "must be >= 0");
  }
  if (r.contains("kappa_MHz")) {
    double v = 0.0;
    if (read_number(r, "readout", "kappa_MHz", true, 0.0, &v, issues)) {
      rd.kappa_MHz = v;
      if (!(v > 0.0)) {
        issues.add("readout.kappa_MHz", "must be positive");
      }
    }
  }
  if (r.contains("gz_tilde_MHz")) {
    double v = 0.0;
    if (read_number(r, "readout", "gz_tilde_MHz", true, 0.0, &v, issues)) {
      rd.gz_tilde_MHz = v;
      if (v < 0.0) {
        issues.add("readout.gz_tilde_MHz", "must be >= 0");
      }
    }
  }
  read_number(r, "readout", "target_fidelity", false, rd.target_fidelity,
              &rd.target_fidelity, issues);
  if (!(rd.target_fidelity > 0.0) || !(rd.target_fidelity < 1.0)) {
    issues.add("readout.target_fidelity", "must be inside (0, 1)");
  }
  if (r.contains("tau_grid_us")) {
    const json& grid = r.at("tau_grid_us");
    if (!grid.is_array() || grid.empty()) {
      issues.add("readout.tau_grid_us", "expected a nonempty array");
    } else {
      rd.tau_grid_us.clear();
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!grid[i].is_number()) {
          issues.add("readout.tau_grid_us", "entries must be numbers");
          break;
        }
        const double v = grid[i].get<double>();
        if (!(v > 0.0) || !std::isfinite(v)) {
          issues.add("readout.tau_grid_us", "entries must be positive");
          break;
        }
        rd.tau_grid_us.push_back(v);
      }
    }
  }
}

double parse_double_strict(const std::string& text, const std::string& what,
                           Issues& issues) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE ||
      !std::isfinite(v)) {
    issues.add("sweep", what + ": '" + text + "' is not a finite number");
    return 0.0;
  }
  return v;
}

long parse_long_strict(const std::string& text, const std::string& what,
                       Issues& issues) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
    issues.add("sweep", what + ": '" + text + "' is not an integer");
    return 0;
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (const char ch : text) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

const char* qubit_type_name(QubitType type) {
  switch (type) {
    case QubitType::transmon:
      return "transmon";
    case QubitType::majorana_transmon:
      return "majorana-transmon";
    case QubitType::majorana_box:
      return "majorana-box";
  }
  return "unknown";
}

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

ScenarioConfig parse_config(const std::string& json_text,
                            const std::string& source_name) {
  const json root = json::parse(json_text, nullptr, false);
  if (root.is_discarded() || !root.is_object()) {
    throw ConfigError({source_name + ": not a valid JSON object"});
  }

  Issues issues;
  check_keys(root, source_name,
             {"qubit_type", "qubit", "resonator", "numerics", "readout"},
             issues);

  ScenarioConfig cfg;
  if (!root.contains("qubit_type") || !root.at("qubit_type").is_string()) {
    issues.add("qubit_type", "required string is missing");
    issues.raise_if_any();
  }
  const std::string type_name = root.at("qubit_type").get<std::string>();
  if (type_name == "transmon") {
    cfg.qubit_type = QubitType::transmon;
  } else if (type_name == "majorana-transmon") {
    cfg.qubit_type = QubitType::majorana_transmon;
  } else if (type_name == "majorana-box") {
    cfg.qubit_type = QubitType::majorana_box;
  } else {
    issues.add("qubit_type", "must be \"transmon\", \"majorana-transmon\", "
                             "or \"majorana-box\"");
    issues.raise_if_any();
  }

  parse_qubit(root, cfg, issues);
  parse_resonator(root, cfg, issues);
  parse_numerics(root, cfg, issues);
  parse_readout(root, cfg, issues);
  issues.raise_if_any();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError({path + ": cannot open file"});
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

SweepSpec parse_sweep(const std::string& arg) {
  Issues issues;
  const auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= arg.size()) {
    throw ConfigError({"sweep: expected path=start:stop:count or "
                       "path=[v1,v2,...], got '" +
                       arg + "'"});
  }
  SweepSpec spec;
  spec.path = arg.substr(0, eq);
  const std::string rhs = arg.substr(eq + 1);

  if (rhs.front() == '[') {
    if (rhs.back() != ']' || rhs.size() < 3) {
      throw ConfigError({"sweep: malformed value list '" + rhs + "'"});
    }
    for (const auto& cell : split(rhs.substr(1, rhs.size() - 2), ',')) {
      spec.values.push_back(parse_double_strict(cell, "list entry", issues));
    }
    issues.raise_if_any();
    return spec;
  }

  const auto parts = split(rhs, ':');
  if (parts.size() != 3) {
    throw ConfigError({"sweep: expected start:stop:count, got '" + rhs + "'"});
  }
  const double start = parse_double_strict(parts[0], "start", issues);
  const double stop = parse_double_strict(parts[1], "stop", issues);
  const long count = parse_long_strict(parts[2], "count", issues);
  issues.raise_if_any();
  if (count < 1 || count > 1000000) {
    throw ConfigError({"sweep: count must be in [1, 1000000]"});
  }
  if (count == 1) {
    spec.values.push_back(start);
    return spec;
  }
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (long i = 0; i < count; ++i) {
    spec.values.push_back(start + static_cast<double>(i) * step);
  }
  spec.values.back() = stop;
  return spec;
}

std::vector<std::string> sweep_paths(QubitType type) {
  std::vector<std::string> paths = {"resonator.lambda_GHz",
                                    "resonator.delta_over_g",
                                    "resonator.omega_r_GHz", "qubit.n_g"};
  switch (type) {
    case QubitType::transmon:
      paths.insert(paths.end(), {"qubit.E_C", "qubit.E_J"});
      break;
    case QubitType::majorana_transmon:
      paths.insert(paths.end(),
                   {"qubit.E_C", "qubit.E_J", "qubit.E_M", "qubit.phi_x"});
      break;
    case QubitType::majorana_box:
      paths.insert(paths.end(), {"qubit.E_tot", "qubit.eps_dot", "qubit.t_L",
                                 "qubit.t_R", "qubit.t", "qubit.phi_x"});
      break;
  }
  return paths;
}

void apply_sweep_value(ScenarioConfig& cfg, const std::string& path,
                       double value) {
  if (path == "resonator.lambda_GHz") {
    cfg.resonator.lambda_GHz = value;
    return;
  }
  if (path == "resonator.delta_over_g") {
    cfg.resonator.delta_over_g = value;
    cfg.resonator.omega_r_GHz.reset();
    return;
  }
  if (path == "resonator.omega_r_GHz") {
    cfg.resonator.omega_r_GHz = value;
    cfg.resonator.delta_over_g.reset();
    return;
  }

  const auto fail = [&]() {
    std::vector<std::string> issues;
    issues.push_back("sweep: path '" + path + "' is not valid for qubit_type " +
                     qubit_type_name(cfg.qubit_type));
    std::string known = "sweep: known paths:";
    for (const auto& p : sweep_paths(cfg.qubit_type)) {
      known += " " + p;
    }
    issues.push_back(known);
    throw ConfigError(issues);
  };

  switch (cfg.qubit_type) {
    case QubitType::transmon: {
      TransmonParams& p = cfg.transmon;
      if (path == "qubit.E_C") {
        p.E_C = value;
      } else if (path == "qubit.E_J") {
        p.E_J = value;
      } else if (path == "qubit.n_g") {
        p.n_g = value;
      } else {
        fail();
      }
      return;
    }
    case QubitType::majorana_transmon: {
      MTParams& p = cfg.mt;
      if (path == "qubit.E_C") {
        p.E_C = value;
      } else if (path == "qubit.E_J") {
        p.E_J = value;
      } else if (path == "qubit.n_g") {
        p.n_g = value;
      } else if (path == "qubit.E_M") {
        p.E_M = value;
      } else if (path == "qubit.phi_x") {
        p.phi_x = value;
      } else {
        fail();
      }
      return;
    }
    case QubitType::majorana_box: {
      MBParams& p = cfg.mb;
      if (path == "qubit.E_tot") {
        p.E_tot = value;
      } else if (path == "qubit.eps_dot") {
        p.eps_dot = value;
      } else if (path == "qubit.n_g") {
        p.n_g = value;
      } else if (path == "qubit.t_L") {
        p.t_L = value;
      } else if (path == "qubit.t_R") {
        p.t_R = value;
      } else if (path == "qubit.t") {
        p.t_L = value;
        p.t_R = value;
      } else if (path == "qubit.phi_x") {
        p.phi_x = value;
      } else {
        fail();
      }
      return;
    }
  }
  fail();
}

}  // namespace qdr
