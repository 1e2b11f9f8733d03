// mmvr: sweep driver for the hybrid-beamforming VR link simulator.
//
//   mmvr simulate --config cfg [--out dir] [--scenario mean|min|both] [--seed N]
//                 [--esn0 start:step:stop] [--codebook NTxNRF,...]
//                 [--queue-units paper|reciprocal]
//   mmvr stats --in results.csv --metric min|mode --bin seconds
//   mmvr check-config --config cfg
//
// Exit codes: 0 success, 2 configuration error, 3 I/O error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <tuple>

#include "CLI11.hpp"
#include "mmvr/config.hpp"
#include "mmvr/error.hpp"
#include "mmvr/results_csv.hpp"
#include "mmvr/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct SimulateArgs {
  std::string config;
  std::string out;
  std::string scenario;
  std::optional<long long> seed;
  std::string esn0;
  std::string codebooks;
  std::string queue_units;
};

int simulate(const SimulateArgs& args) {
  mmvr::SweepConfig config = mmvr::load_config(args.config);
  if (!args.scenario.empty()) config.scenarios = mmvr::parse_scenarios(args.scenario);
  if (args.seed) {
    if (*args.seed < 0) throw mmvr::ConfigError("--seed must be non-negative");
    config.seed = static_cast<std::uint64_t>(*args.seed);
    config.channel.seed = config.seed;
  }
  if (!args.esn0.empty()) config.esn0 = mmvr::parse_esn0_range(args.esn0);
  if (!args.codebooks.empty())
    config.codebook_filter = mmvr::parse_codebook_list(args.codebooks, config.n_r, config.n_ds);
  if (!args.queue_units.empty()) config.queue_units = mmvr::parse_queue_units(args.queue_units);
  if (!args.out.empty()) config.output = args.out;

  const mmvr::SweepResult result = mmvr::run_sweep(config);

  const std::filesystem::path dir(config.output);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw mmvr::IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

  mmvr::write_results_csv(result.records, dir / "results.csv");
  {
    const auto path = dir / "summary.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mmvr::IoError("cannot open '" + path.string() + "' for writing");
    mmvr::write_summary_csv(result.summary, out);
    if (!out) throw mmvr::IoError("error while writing '" + path.string() + "'");
  }

  std::size_t infeasible = 0;
  for (const auto& r : result.records) infeasible += r.feasible ? 0 : 1;
  std::cout << "evaluated " << result.points.size() << " sweep points, " << result.records.size()
            << " link records (" << infeasible << " infeasible)\n";
  for (const auto& u : result.summary.utilities)
    std::cout << "  " << mmvr::to_string(u.scenario) << " " << u.codebook.label()
              << "  mean utility " << mmvr::format_float(u.mean_utility) << "\n";
  std::cout << "wrote " << (dir / "results.csv").string() << " and "
            << (dir / "summary.csv").string() << "\n";
  return 0;
}

int stats(const std::string& input, const std::string& metric, double bin) {
  if (metric != "min" && metric != "mode") throw mmvr::ConfigError("--metric must be min|mode");
  if (metric == "mode" && !(bin > 0.0)) throw mmvr::ConfigError("--bin must be positive");

  const mmvr::CsvTable table = mmvr::read_csv(input);
  const std::size_t c_scenario = table.column("scenario"), c_tx = table.column("n_tx"),
                    c_rf = table.column("n_rf"), c_ap = table.column("ap"),
                    c_user = table.column("user"), c_delay = table.column("d_trans_s");

  using Key = std::tuple<std::string, int, int, int, int>;
  std::map<Key, std::vector<double>> groups;
  for (const auto& row : table.rows) {
    const std::string& text = row.fields[c_delay];
    if (text.empty()) continue;
    const Key key{row.fields[c_scenario], std::stoi(row.fields[c_tx]), std::stoi(row.fields[c_rf]),
                  std::stoi(row.fields[c_ap]), std::stoi(row.fields[c_user])};
    groups[key].push_back(std::stod(text));
  }

  std::cout << "scenario,n_tx,n_rf,ap,user,metric,d_trans_s\n";
  for (const auto& [key, values] : groups) {
    const double v = metric == "min" ? mmvr::min_statistic(values) : mmvr::mode_statistic(values, bin);
    const auto& [scenario, tx, rf, ap, user] = key;
    std::cout << scenario << ',' << tx << ',' << rf << ',' << ap << ',' << user << ',' << metric << ','
              << mmvr::format_float(v) << '\n';
  }
  return 0;
}

int check_config(const std::string& path) {
  const mmvr::SweepConfig config = mmvr::load_config(path);
  config.validate();
  std::cout << "config OK: " << config.codebooks().size() << " codebooks, "
            << config.esn0.points().size() << " Es/N0 points, " << config.scenarios.size()
            << " scenarios, " << config.num_users << " users, " << config.num_aps << " APs\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmWave hybrid-beamforming VR link simulator"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "run the parameter sweep and write CSV results");
  simulate_cmd->add_option("--config", sim.config, "configuration file")->required();
  simulate_cmd->add_option("--out", sim.out, "output directory");
  simulate_cmd->add_option("--scenario", sim.scenario, "mean|min|both");
  simulate_cmd->add_option("--seed", sim.seed, "random seed");
  simulate_cmd->add_option("--esn0", sim.esn0, "Es/N0 grid start:step:stop in dB");
  simulate_cmd->add_option("--codebook", sim.codebooks, "comma-separated NTxNRF list");
  simulate_cmd->add_option("--queue-units", sim.queue_units, "paper|reciprocal");

  std::string stats_in, stats_metric = "min";
  double stats_bin = 1e-6;
  auto* stats_cmd = app.add_subcommand("stats", "min/mode transmission delay from a results CSV");
  stats_cmd->add_option("--in", stats_in, "results.csv")->required();
  stats_cmd->add_option("--metric", stats_metric, "min|mode");
  stats_cmd->add_option("--bin", stats_bin, "mode bin width in seconds");

  std::string check_path;
  auto* check_cmd = app.add_subcommand("check-config", "validate a configuration file");
  check_cmd->add_option("--config", check_path, "configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*simulate_cmd) return simulate(sim);
    if (*stats_cmd) return stats(stats_in, stats_metric, stats_bin);
    if (*check_cmd) return check_config(check_path);
  } catch (const mmvr::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const mmvr::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mmvr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
