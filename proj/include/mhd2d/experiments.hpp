#pragma once

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <utility>
#include <vector>

#include "mhd2d/analytic.hpp"
#include "mhd2d/checkpoint.hpp"
#include "mhd2d/config.hpp"
#include "mhd2d/inequalities.hpp"
#include "mhd2d/mollifier.hpp"
#include "mhd2d/solver.hpp"

namespace mhd2d {

/// Build the configured initial state. Random data is normalized so that
/// ||u(0)||_2 = ||b(0)||_2 = 1; this is part of the config contract.
inline MhdState initial_state(const RunConfig& cfg, const Grid& grid) {
  MhdState s(grid);
  if (cfg.initial_data == "taylor_green") {
    s = analytic_reference(ReferenceKind::taylor_green, cfg.params, 0.0, grid);
  } else if (cfg.initial_data == "magnetic_decay") {
    s = analytic_reference(ReferenceKind::magnetic_decay, cfg.params, 0.0, grid);
  } else if (cfg.initial_data == "taylor_green_magnetic") {
    s = analytic_reference(ReferenceKind::taylor_green, cfg.params, 0.0, grid);
    s.j_hat = analytic_reference(ReferenceKind::magnetic_decay, cfg.params, 0.0, grid).j_hat;
  } else if (cfg.initial_data == "random") {
    SpectralField w = sample_spectral({grid, cfg.band_limit, cfg.alpha, cfg.seed, true});
    SpectralField j = sample_spectral(
        {grid, cfg.band_limit, cfg.alpha, cfg.seed ^ 0x9e3779b97f4a7c15ULL, true});
    s = MhdState(std::move(w), std::move(j));
    const FlowMoments m = flow_moments(s.omega_hat, s.j_hat);
    for (auto& z : s.omega_hat.c) z /= std::sqrt(m.u2);
    for (auto& z : s.j_hat.c) z /= std::sqrt(m.b2);
  } else {
    throw ConfigError("unknown initial_data '" + cfg.initial_data + "'");
  }
  if (cfg.mollify_epsilon > 0.0) {
    MollifierSpec mspec{cfg.mollify_epsilon, standard_bump};
    s.omega_hat = mollify_spectral(s.omega_hat, mspec);
    s.j_hat = mollify_spectral(s.j_hat, mspec);
  }
  return s;
}

/// The config-level run operation: grid + initial data + time integration.
inline RunResult run_config(const RunConfig& cfg) {
  Grid grid = make_grid(cfg.nx, cfg.ny, cfg.Lx, cfg.Ly);
  MhdState s0 = initial_state(cfg, grid);
  RunOptions opts{cfg.dt, cfg.t_end, cfg.diagnostics_interval, cfg.p_ladder};
  RunResult res = run(s0, cfg.params, opts);
  res.series.preset = cfg.preset;
  return res;
}

inline nlohmann::json record_json(const DiagnosticsRecord& r,
                                  const std::vector<double>& p_ladder) {
  nlohmann::json jr{{"t", r.t},
                    {"l2_u", r.l2_u},
                    {"l2_b", r.l2_b},
                    {"l2_omega", r.l2_omega},
                    {"l2_j", r.l2_j},
                    {"l2_grad_omega", r.l2_grad_omega},
                    {"l2_grad_j", r.l2_grad_j},
                    {"X", r.X},
                    {"cross_helicity", r.cross_helicity},
                    {"msq_potential", r.msq_potential}};
  for (std::size_t i = 0; i < r.grad_u_lp.size() && i < p_ladder.size(); ++i)
    jr["grad_u_lp"][std::to_string(static_cast<long long>(p_ladder[i]))] =
        r.grad_u_lp[i];
  return jr;
}

/// Final monitors and bound functionals for one finished series.
inline nlohmann::json summary_json(const DiagnosticsSeries& series) {
  nlohmann::json j;
  j["grid"] = {{"nx", series.nx}, {"ny", series.ny}, {"lx", series.Lx}, {"ly", series.Ly}};
  j["params"] = {{"nu1", series.params.nu1},   {"nu2", series.params.nu2},
                 {"eta1", series.params.eta1}, {"eta2", series.params.eta2},
                 {"epsilon", series.params.epsilon}, {"preset", series.preset}};
  j["dt"] = series.dt;
  j["n_records"] = series.records.size();
  j["blow_up"] = series.blow_up;
  if (!series.error.empty()) j["error"] = series.error;
  if (series.records.empty()) return j;

  j["final"] = record_json(series.records.back(), series.p_ladder);
  j["energy_budget_residual"] = energy_budget_residual(series, series.params);

  if (!series.p_ladder.empty() && series.records.size() > 1) {
    nlohmann::json per_p;
    double best = 0.0;
    for (double p : series.p_ladder) {
      const double v = regularity_criterion(series, {p});
      per_p[std::to_string(static_cast<long long>(p))] = v;
      best = std::max(best, v);
    }
    j["regularity_criterion"] = {{"value", best}, {"per_p", per_p}};
  }

  nlohmann::json monitors;
  if (series.params.is_mixed_case_A() && series.records.front().X > 0.0) {
    monitors["prop21"] = bound_monitor(series, BoundKind::prop21);
    const auto& r0 = series.records.front();
    if (r0.l2_grad_omega > 0.0 || r0.l2_grad_j > 0.0)
      monitors["prop22"] = bound_monitor(series, BoundKind::prop22);
  }
  if (series.params.is_magnetic_only() && series.records.front().X > 0.0)
    monitors["prop33"] = bound_monitor(series, BoundKind::prop33);
  if (!monitors.empty()) j["monitors"] = monitors;
  return j;
}

/// Run the configured simulation and write the CSV series, JSON summary and
/// optional checkpoint. Exit status 0 iff there was no blow-up and every
/// hard-asserted monitor passed (prop33 <= 1 + 1e-3 on magnetic_only runs).
inline int main_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  try {
    RunResult res = run_config(cfg);
    const fs::path dir(cfg.output_dir.empty() ? "." : cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);

    const fs::path csv_path =
        cfg.csv_path.empty() ? dir / "series.csv" : fs::path(cfg.csv_path);
    const fs::path summary_path =
        cfg.summary_path.empty() ? dir / "summary.json" : fs::path(cfg.summary_path);

    {
      std::ofstream csv(csv_path);
      if (!csv) throw std::runtime_error("cannot open '" + csv_path.string() + "'");
      write_csv(res.series, csv);
      if (!csv) throw std::runtime_error("write failed for '" + csv_path.string() + "'");
    }
    nlohmann::json summary = summary_json(res.series);
    bool monitors_ok = true;
    if (summary.contains("monitors") && summary["monitors"].contains("prop33"))
      monitors_ok = summary["monitors"]["prop33"].get<double>() <= 1.0 + 1e-3;
    summary["monitors_ok"] = monitors_ok;
    {
      std::ofstream js(summary_path);
      if (!js) throw std::runtime_error("cannot open '" + summary_path.string() + "'");
      js << summary.dump(2) << "\n";
      if (!js)
        throw std::runtime_error("write failed for '" + summary_path.string() + "'");
    }
    if (!cfg.checkpoint_path.empty()) save_checkpoint(cfg.checkpoint_path, res.state);

    out << (res.series.blow_up ? "blow-up" : "completed") << " t=" << res.state.t
        << " records=" << res.series.records.size() << " csv=" << csv_path.string()
        << " summary=" << summary_path.string() << "\n";
    return (res.series.blow_up || !monitors_ok) ? 1 : 0;
  } catch (const std::exception& e) {
    nlohmann::json report{{"error", e.what()}};
    err << report.dump() << "\n";
    return 2;
  }
}

/// Swap x and y together with the vector components (physical-space
/// transpose), then read the transformed vorticity/current back off the
/// transformed velocity and magnetic fields by a spectral curl. Square grids
/// only. The scalars change sign under this transform; doing the bookkeeping
/// at the vector level keeps that automatic.
inline MhdState swap_state(const MhdState& s) {
  const Grid& g = s.grid();
  if (g.nx() != g.ny() || g.lx() != g.ly())
    throw std::invalid_argument("swap_state: square grid required");
  const auto swap_vector_of = [&](const SpectralField& curl) {
    auto [c1, c2] = biot_savart(curl);
    RealField v1 = to_real(c1), v2 = to_real(c2);
    RealField w1(g), w2(g);
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j) {
        w1(i, j) = v2(j, i);
        w2(i, j) = v1(j, i);
      }
    SpectralField w1h = transform(w1), w2h = transform(w2);
    SpectralField curl_new = derivative(w2h, Axis::x, 1);
    const SpectralField d1y = derivative(w1h, Axis::y, 1);
    for (std::size_t m = 0; m < curl_new.c.size(); ++m) curl_new.c[m] -= d1y.c[m];
    curl_new.set_mean_zero();
    return curl_new;
  };
  MhdState out(g);
  out.t = s.t;
  out.omega_hat = swap_vector_of(s.omega_hat);
  out.j_hat = swap_vector_of(s.j_hat);
  return out;
}

/// Evolve (i) the mixed_case_B run and (ii) the mixed_case_A run of the
/// swap-transformed data, then compare (i) against the inverse swap of (ii)
/// at every snapshot time. Returns the max over snapshots of
/// ||omega difference||_2 + ||j difference||_2.
inline double swap_symmetry_experiment(const RunConfig& cfg) {
  if (!cfg.params.is_mixed_case_B())
    throw std::invalid_argument("swap-test: config must use the mixed_case_B preset");
  if (cfg.nx != cfg.ny || cfg.Lx != cfg.Ly)
    throw std::invalid_argument("swap-test: square grid required");

  Grid grid = make_grid(cfg.nx, cfg.ny, cfg.Lx, cfg.Ly);
  const MhdState init_b = initial_state(cfg, grid);
  const MhdState init_a = swap_state(init_b);
  const MhdParams params_a = MhdParams::mixed_case_A(cfg.params.nu1, cfg.params.eta2);

  const long n_steps = static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-12));
  const long every = cfg.diagnostics_interval <= 0.0
                         ? 1
                         : std::max<long>(1, std::llround(cfg.diagnostics_interval / cfg.dt));

  Stepper run_i(grid, cfg.params), run_ii(grid, params_a);
  MhdState s_i = init_b, s_ii = init_a;
  const auto deviation = [&]() {
    const MhdState back = swap_state(s_ii);
    SpectralField dw = s_i.omega_hat, dj = s_i.j_hat;
    for (std::size_t m = 0; m < dw.c.size(); ++m) {
      dw.c[m] -= back.omega_hat.c[m];
      dj.c[m] -= back.j_hat.c[m];
    }
    return l2_norm(dw) + l2_norm(dj);
  };

  double worst = deviation();
  for (long k = 1; k <= n_steps; ++k) {
    const double dt_k = std::min(cfg.dt, cfg.t_end - (k - 1) * cfg.dt);
    run_i.advance(s_i, dt_k);
    run_ii.advance(s_ii, dt_k);
    if (k % every == 0 || k == n_steps) worst = std::max(worst, deviation());
  }
  return worst;
}

/// L2 distance between the reconstructed (u, b) pairs of two states.
inline double velocity_magnetic_distance(const MhdState& a, const MhdState& b) {
  SpectralField dw = a.omega_hat, dj = a.j_hat;
  for (std::size_t m = 0; m < dw.c.size(); ++m) {
    dw.c[m] -= b.omega_hat.c[m];
    dj.c[m] -= b.j_hat.c[m];
  }
  const FlowMoments m = flow_moments(dw, dj);
  return std::sqrt(m.u2 + m.b2);
}

/// For each consecutive pair of regularization strengths, run the
/// epsilon-regularized system from epsilon-mollified data and measure the
/// distance of the final (u, b) fields. A decreasing sequence is the
/// discrete counterpart of the vanishing-regularization limit.
inline std::vector<std::pair<double, double>> epsilon_refinement_experiment(
    const RunConfig& cfg, const std::vector<double>& eps_ladder) {
  if (eps_ladder.size() < 2)
    throw std::invalid_argument("eps-test: ladder needs at least 2 entries");
  for (double e : eps_ladder)
    if (!(e > 0.0)) throw std::invalid_argument("eps-test: epsilons must be positive");

  Grid grid = make_grid(cfg.nx, cfg.ny, cfg.Lx, cfg.Ly);
  std::vector<MhdState> finals;
  finals.reserve(eps_ladder.size());
  for (double eps : eps_ladder) {
    RunConfig c = cfg;
    c.params.epsilon = eps;
    c.mollify_epsilon = eps;
    MhdState s = initial_state(c, grid);
    Stepper st(grid, c.params);
    const long n_steps = static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-12));
    for (long k = 1; k <= n_steps; ++k)
      st.advance(s, std::min(cfg.dt, cfg.t_end - (k - 1) * cfg.dt));
    finals.push_back(std::move(s));
  }
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < finals.size(); ++i)
    out.emplace_back(eps_ladder[i], velocity_magnetic_distance(finals[i], finals[i + 1]));
  return out;
}

inline nlohmann::json report_json(const InequalityReport& rep) {
  return nlohmann::json{{"kind", to_string(rep.kind)},
                        {"n_samples", rep.n_samples},
                        {"n_valid", rep.n_valid},
                        {"max_ratio", rep.max_ratio},
                        {"median_ratio", rep.median_ratio},
                        {"argmax_seed", rep.argmax_seed},
                        {"resolution", rep.resolution}};
}

/// Campaign configuration in the same key=value format.
struct CampaignConfig {
  InequalityKind kind = InequalityKind::trilinear_aniso;
  int n_samples = 1000;
  int nx = 128, ny = 128;
  double Lx = two_pi, Ly = two_pi;
  int band_limit = 10;
  double alpha = 1.5;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string output_dir = ".";
};

inline CampaignConfig parse_campaign_config(const std::string& text) {
  CampaignConfig cfg;
  bool has_kind = false;
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
    if (key == "kind") {
      cfg.kind = inequality_kind_from_string(val);
      has_kind = true;
    } else if (key == "n_samples") {
      cfg.n_samples = static_cast<int>(detail::parse_int(val, line, key));
    } else if (key == "nx") {
      cfg.nx = static_cast<int>(detail::parse_int(val, line, key));
    } else if (key == "ny") {
      cfg.ny = static_cast<int>(detail::parse_int(val, line, key));
    } else if (key == "lx") {
      cfg.Lx = detail::parse_double(val, line, key);
    } else if (key == "ly") {
      cfg.Ly = detail::parse_double(val, line, key);
    } else if (key == "band_limit") {
      cfg.band_limit = static_cast<int>(detail::parse_int(val, line, key));
    } else if (key == "alpha") {
      cfg.alpha = detail::parse_double(val, line, key);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(detail::parse_int(val, line, key));
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(detail::parse_int(val, line, key));
    } else if (key == "output_dir") {
      cfg.output_dir = val;
    } else {
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  if (!has_kind) throw ConfigError("missing required keys: kind");
  return cfg;
}

}  // namespace mhd2d
