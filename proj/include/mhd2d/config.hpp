#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhd2d/params.hpp"

namespace mhd2d {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Everything a simulation run needs, parsed from key=value text.
struct RunConfig {
  int nx = 0, ny = 0;
  double Lx = two_pi, Ly = two_pi;
  std::string preset;  // mixed_case_A | mixed_case_B | magnetic_only | ideal | custom
  MhdParams params;
  double nu_scalar = 0.0, eta_scalar = 0.0;  // as given with a preset
  double dt = 0.0;
  double t_end = -1.0;
  std::string initial_data;  // taylor_green | magnetic_decay | taylor_green_magnetic | random
  std::uint64_t seed = 1;
  int band_limit = 8;
  double alpha = 2.0;
  double mollify_epsilon = 0.0;  // 0 disables mollified initialization
  double diagnostics_interval = 0.0;  // 0 records every step
  std::vector<double> p_ladder = {2, 4, 8, 16, 32, 64};
  std::vector<double> eps_ladder;  // used by the eps-test experiment
  std::string output_dir = ".";
  std::string csv_path, summary_path, checkpoint_path;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& v, int line, const std::string& key) {
  std::size_t pos = 0;
  double d = 0;
  try {
    d = std::stod(v, &pos);
  } catch (...) {
    pos = 0;
  }
  if (pos != v.size() || v.empty())
    throw ConfigError("line " + std::to_string(line) + ": malformed value for '" +
                      key + "'");
  return d;
}

inline long long parse_int(const std::string& v, int line, const std::string& key) {
  std::size_t pos = 0;
  long long i = 0;
  try {
    i = std::stoll(v, &pos);
  } catch (...) {
    pos = 0;
  }
  if (pos != v.size() || v.empty())
    throw ConfigError("line " + std::to_string(line) + ": malformed value for '" +
                      key + "'");
  return i;
}

inline std::vector<double> parse_list(const std::string& v, int line,
                                      const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), line, key));
  if (out.empty())
    throw ConfigError("line " + std::to_string(line) + ": empty list for '" + key + "'");
  return out;
}

}  // namespace detail

/// Parse key=value lines ('#' starts a comment). Unknown keys, malformed
/// values and violated invariants are all reported with their line number.
inline RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  bool has_nx = false, has_ny = false, has_dt = false, has_t_end = false,
       has_init = false, has_preset = false, has_explicit = false, has_nu = false,
       has_eta = false;

  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    const auto hash = raw.find('#');
    std::string s = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected key=value");
    const std::string key = detail::trim(s.substr(0, eq));
    const std::string val = detail::trim(s.substr(eq + 1));

    const auto fail = [&](const std::string& what) -> ConfigError {
      return ConfigError("line " + std::to_string(line) + ": " + what);
    };

    if (key == "nx") {
      cfg.nx = static_cast<int>(detail::parse_int(val, line, key));
      has_nx = true;
    } else if (key == "ny") {
      cfg.ny = static_cast<int>(detail::parse_int(val, line, key));
      has_ny = true;
    } else if (key == "lx") {
      cfg.Lx = detail::parse_double(val, line, key);
      if (!(cfg.Lx > 0)) throw fail("lx must be positive");
    } else if (key == "ly") {
      cfg.Ly = detail::parse_double(val, line, key);
      if (!(cfg.Ly > 0)) throw fail("ly must be positive");
    } else if (key == "preset") {
      cfg.preset = val;
      has_preset = true;
      if (val != "mixed_case_A" && val != "mixed_case_B" && val != "magnetic_only" &&
          val != "ideal")
        throw fail("unknown preset '" + val + "'");
    } else if (key == "nu") {
      cfg.nu_scalar = detail::parse_double(val, line, key);
      has_nu = true;
      if (cfg.nu_scalar < 0) throw fail("nu must be nonnegative");
    } else if (key == "eta") {
      cfg.eta_scalar = detail::parse_double(val, line, key);
      has_eta = true;
      if (cfg.eta_scalar < 0) throw fail("eta must be nonnegative");
    } else if (key == "nu1" || key == "nu2" || key == "eta1" || key == "eta2") {
      const double v = detail::parse_double(val, line, key);
      if (v < 0) throw fail(key + " must be nonnegative");
      has_explicit = true;
      if (key == "nu1") cfg.params.nu1 = v;
      else if (key == "nu2") cfg.params.nu2 = v;
      else if (key == "eta1") cfg.params.eta1 = v;
      else cfg.params.eta2 = v;
    } else if (key == "epsilon") {
      cfg.params.epsilon = detail::parse_double(val, line, key);
      if (cfg.params.epsilon < 0) throw fail("epsilon must be nonnegative");
    } else if (key == "dt") {
      cfg.dt = detail::parse_double(val, line, key);
      has_dt = true;
      if (!(cfg.dt > 0)) throw fail("dt must be positive");
    } else if (key == "t_end") {
      cfg.t_end = detail::parse_double(val, line, key);
      has_t_end = true;
      if (cfg.t_end < 0) throw fail("t_end must be nonnegative");
    } else if (key == "initial_data") {
      if (val != "taylor_green" && val != "magnetic_decay" &&
          val != "taylor_green_magnetic" && val != "random")
        throw fail("unknown initial_data '" + val + "'");
      cfg.initial_data = val;
      has_init = true;
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(detail::parse_int(val, line, key));
    } else if (key == "band_limit") {
      cfg.band_limit = static_cast<int>(detail::parse_int(val, line, key));
      if (cfg.band_limit < 1) throw fail("band_limit must be >= 1");
    } else if (key == "alpha") {
      cfg.alpha = detail::parse_double(val, line, key);
      if (cfg.alpha < 0) throw fail("alpha must be nonnegative");
    } else if (key == "mollify_epsilon") {
      cfg.mollify_epsilon = detail::parse_double(val, line, key);
      if (cfg.mollify_epsilon < 0) throw fail("mollify_epsilon must be nonnegative");
    } else if (key == "diagnostics_interval") {
      cfg.diagnostics_interval = detail::parse_double(val, line, key);
      if (cfg.diagnostics_interval < 0) throw fail("diagnostics_interval must be >= 0");
    } else if (key == "p_ladder") {
      cfg.p_ladder = detail::parse_list(val, line, key);
      for (double p : cfg.p_ladder)
        if (p < 2.0) throw fail("p_ladder entries must be >= 2");
    } else if (key == "eps_ladder") {
      cfg.eps_ladder = detail::parse_list(val, line, key);
      for (double e : cfg.eps_ladder)
        if (!(e > 0)) throw fail("eps_ladder entries must be positive");
    } else if (key == "output_dir") {
      cfg.output_dir = val;
    } else if (key == "csv") {
      cfg.csv_path = val;
    } else if (key == "summary") {
      cfg.summary_path = val;
    } else if (key == "checkpoint") {
      cfg.checkpoint_path = val;
    } else {
      throw fail("unknown key '" + key + "'");
    }
  }

  std::string missing;
  const auto need = [&](bool ok, const char* name) {
    if (!ok) missing += std::string(missing.empty() ? "" : ", ") + name;
  };
  need(has_nx, "nx");
  need(has_ny, "ny");
  need(has_dt, "dt");
  need(has_t_end, "t_end");
  need(has_init, "initial_data");
  need(has_preset || has_explicit, "preset (or nu1/nu2/eta1/eta2)");
  if (!missing.empty()) throw ConfigError("missing required keys: " + missing);

  if (has_preset && has_explicit)
    throw ConfigError("give either preset or explicit nu1/nu2/eta1/eta2, not both");
  if (has_preset) {
    if ((cfg.preset == "mixed_case_A" || cfg.preset == "mixed_case_B") &&
        (!has_nu || !has_eta))
      throw ConfigError("preset '" + cfg.preset + "' requires keys nu and eta");
    if (cfg.preset == "magnetic_only" && !has_eta)
      throw ConfigError("preset 'magnetic_only' requires key eta");
    const double eps = cfg.params.epsilon;
    cfg.params = params_from_preset(cfg.preset, cfg.nu_scalar, cfg.eta_scalar);
    cfg.params.epsilon = eps;
  } else {
    cfg.preset = "custom";
  }
  return cfg;
}

/// Canonical text form; parse(serialize(c)) yields an equal config.
inline std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "nx=" << cfg.nx << "\nny=" << cfg.ny << "\nlx=" << cfg.Lx
     << "\nly=" << cfg.Ly << "\n";
  if (cfg.preset != "custom") {
    os << "preset=" << cfg.preset << "\n";
    if (cfg.preset == "mixed_case_A" || cfg.preset == "mixed_case_B")
      os << "nu=" << cfg.nu_scalar << "\neta=" << cfg.eta_scalar << "\n";
    else if (cfg.preset == "magnetic_only")
      os << "eta=" << cfg.eta_scalar << "\n";
  } else {
    os << "nu1=" << cfg.params.nu1 << "\nnu2=" << cfg.params.nu2
       << "\neta1=" << cfg.params.eta1 << "\neta2=" << cfg.params.eta2 << "\n";
  }
  if (cfg.params.epsilon != 0.0) os << "epsilon=" << cfg.params.epsilon << "\n";
  os << "dt=" << cfg.dt << "\nt_end=" << cfg.t_end
     << "\ninitial_data=" << cfg.initial_data << "\nseed=" << cfg.seed
     << "\nband_limit=" << cfg.band_limit << "\nalpha=" << cfg.alpha
     << "\nmollify_epsilon=" << cfg.mollify_epsilon
     << "\ndiagnostics_interval=" << cfg.diagnostics_interval << "\n";
  os << "p_ladder=";
  for (std::size_t i = 0; i < cfg.p_ladder.size(); ++i)
    os << (i ? "," : "") << cfg.p_ladder[i];
  os << "\n";
  if (!cfg.eps_ladder.empty()) {
    os << "eps_ladder=";
    for (std::size_t i = 0; i < cfg.eps_ladder.size(); ++i)
      os << (i ? "," : "") << cfg.eps_ladder[i];
    os << "\n";
  }
  os << "output_dir=" << cfg.output_dir << "\n";
  if (!cfg.csv_path.empty()) os << "csv=" << cfg.csv_path << "\n";
  if (!cfg.summary_path.empty()) os << "summary=" << cfg.summary_path << "\n";
  if (!cfg.checkpoint_path.empty()) os << "checkpoint=" << cfg.checkpoint_path << "\n";
  return os.str();
}

}  // namespace mhd2d
