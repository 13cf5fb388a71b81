#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mhd2d/mhd2d.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw mhd2d::ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

mhd2d::RunConfig load_run_config(const std::string& path, const std::string& output,
                                 const std::string& preset, long long seed) {
  mhd2d::RunConfig cfg = mhd2d::parse_config(read_file(path));
  if (!output.empty()) cfg.output_dir = output;
  if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
  if (!preset.empty()) {
    const double nu = cfg.nu_scalar > 0 ? cfg.nu_scalar
                                        : std::max(cfg.params.nu1, cfg.params.nu2);
    const double eta = cfg.eta_scalar > 0 ? cfg.eta_scalar
                                          : std::max(cfg.params.eta1, cfg.params.eta2);
    const double eps = cfg.params.epsilon;
    cfg.params = mhd2d::params_from_preset(preset, nu, eta);
    cfg.params.epsilon = eps;
    cfg.preset = preset;
    cfg.nu_scalar = nu;
    cfg.eta_scalar = eta;
  }
  return cfg;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "'");
  os << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D incompressible MHD pseudo-spectral lab"};
  app.require_subcommand(1);

  std::string config_path, output_dir, preset;
  long long seed = -1;

  auto* cmd_run = app.add_subcommand("run", "integrate one configured simulation");
  cmd_run->add_option("--config", config_path, "config file (key=value)")->required();
  cmd_run->add_option("--output", output_dir, "output directory");
  cmd_run->add_option("--preset", preset, "override the dissipation preset");
  cmd_run->add_option("--seed", seed, "override the random-data seed");

  auto* cmd_swap = app.add_subcommand("swap-test", "axis-swap symmetry experiment");
  cmd_swap->add_option("--config", config_path, "config file")->required();
  cmd_swap->add_option("--output", output_dir, "output directory");

  auto* cmd_eps = app.add_subcommand("eps-test", "regularization refinement experiment");
  cmd_eps->add_option("--config", config_path, "config file")->required();
  cmd_eps->add_option("--output", output_dir, "output directory");

  auto* cmd_ineq = app.add_subcommand("ineq-campaign", "randomized inequality campaign");
  cmd_ineq->add_option("--config", config_path, "campaign config file")->required();
  cmd_ineq->add_option("--output", output_dir, "output directory");
  cmd_ineq->add_option("--seed", seed, "override the family seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_run) {
      return mhd2d::main_run(load_run_config(config_path, output_dir, preset, seed),
                             std::cout, std::cerr);
    }
    if (*cmd_swap) {
      mhd2d::RunConfig cfg = load_run_config(config_path, output_dir, "", -1);
      const double dev = mhd2d::swap_symmetry_experiment(cfg);
      std::cout << "swap-test max deviation = " << dev << "\n";
      std::filesystem::create_directories(cfg.output_dir);
      write_json(std::filesystem::path(cfg.output_dir) / "swap_test.json",
                 {{"max_deviation", dev}});
      return 0;
    }
    if (*cmd_eps) {
      mhd2d::RunConfig cfg = load_run_config(config_path, output_dir, "", -1);
      std::vector<double> ladder =
          cfg.eps_ladder.empty() ? std::vector<double>{0.1, 0.05, 0.025, 0.0125}
                                 : cfg.eps_ladder;
      const auto dist = mhd2d::epsilon_refinement_experiment(cfg, ladder);
      bool decreasing = true;
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t i = 0; i < dist.size(); ++i) {
        std::cout << "eps=" << dist[i].first << " distance_to_next=" << dist[i].second
                  << "\n";
        rows.push_back({{"epsilon", dist[i].first}, {"distance", dist[i].second}});
        if (i > 0 && !(dist[i].second < dist[i - 1].second)) decreasing = false;
      }
      std::filesystem::create_directories(cfg.output_dir);
      write_json(std::filesystem::path(cfg.output_dir) / "eps_test.json",
                 {{"distances", rows}, {"strictly_decreasing", decreasing}});
      std::cout << (decreasing ? "distances strictly decreasing"
                               : "distances NOT strictly decreasing")
                << "\n";
      return decreasing ? 0 : 1;
    }
    // ineq-campaign
    mhd2d::CampaignConfig cc = mhd2d::parse_campaign_config(read_file(config_path));
    if (!output_dir.empty()) cc.output_dir = output_dir;
    if (seed >= 0) cc.seed = static_cast<std::uint64_t>(seed);
    mhd2d::Grid grid = mhd2d::make_grid(cc.nx, cc.ny, cc.Lx, cc.Ly);
    mhd2d::RandomFieldSpec family{grid, cc.band_limit, cc.alpha, cc.seed, true};
    mhd2d::InequalityReport rep =
        mhd2d::run_campaign(cc.kind, family, cc.n_samples, cc.threads);
    const nlohmann::json j = mhd2d::report_json(rep);
    std::cout << j.dump() << "\n";
    std::filesystem::create_directories(cc.output_dir);
    write_json(std::filesystem::path(cc.output_dir) /
                   (std::string("ineq_") + mhd2d::to_string(rep.kind) + ".json"),
               j);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
    return 2;
  }
}
