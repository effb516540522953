// eosq command-line front end.

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "eosq/cli_io.hpp"
#include "eosq/errors.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kConvergenceError = 3,
  kReconstructionGuard = 4,
};

using Runner = std::function<std::vector<std::filesystem::path>(
    const eosq::ScenarioConfig&, const eosq::RunOptions&)>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Quantum statistics of electro-optic sampling in a three-level medium.\n"
      "Config keys may be overridden with EOSQ_<SECTION>_<KEY> variables."};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset;
  std::string out_dir = ".";
  unsigned threads = 1;
  std::optional<double> tolerance;

  const std::map<std::string, std::pair<std::string, Runner>> commands{
      {"sweep-theta", {"Gamma contributions over the waveplate phase", eosq::run_sweep_theta}},
      {"spectral-filter", {"Gamma with half of the probe spectrum detected", eosq::run_spectral_filter}},
      {"distribution", {"signal probability distribution", eosq::run_distribution}},
      {"contour", {"one-sigma variance contour over the quadrature phase", eosq::run_contour}},
      {"reconstruct", {"Gaussian deconvolution of the THz field statistics", eosq::run_reconstruct}},
      {"chi2-table", {"susceptibility values on a frequency grid", eosq::run_chi2_table}},
  };

  std::string chosen;
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    auto* cfg_opt = sub->add_option("--config", config_path, "scenario config file");
    auto* preset_opt = sub->add_option("--preset", preset, "named preset");
    cfg_opt->excludes(preset_opt);
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_option("--threads", threads, "worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--tolerance", tolerance, "relative tolerance of the Omega integral")
        ->check(CLI::PositiveNumber);
    sub->callback([&chosen, name = name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (config_path.empty() && preset.empty()) {
      std::cerr << "error: one of --config or --preset is required\n";
      return kConfigError;
    }
    eosq::ScenarioConfig cfg = config_path.empty()
                                   ? eosq::load_preset(preset)
                                   : eosq::load_config(config_path);
    if (tolerance) {
      if (!(*tolerance <= 1e-2)) {
        throw eosq::ValidationError({"--tolerance must lie in (0, 1e-2]"});
      }
      cfg.rel_tol = *tolerance;
    }
    const eosq::RunOptions opt{out_dir, threads};
    for (const auto& path : commands.at(chosen).second(cfg, opt)) {
      std::cout << path.string() << '\n';
    }
    return kOk;
  } catch (const eosq::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const eosq::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kConfigError;
  } catch (const eosq::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << '\n';
    return kConvergenceError;
  } catch (const eosq::ReconstructionError& e) {
    std::cerr << "reconstruction refused (ratio " << e.ratio() << "): " << e.what()
              << '\n';
    return kReconstructionGuard;
  } catch (const eosq::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
