#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "cnls/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"combined-nonlinearity radial NLS laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_override;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--jobs", jobs, "max concurrent runs in sweeps");
    sub->add_option("--output", output_override, "override config output_dir");
  };

  CLI::App* c_threshold = app.add_subcommand("threshold", "compute the variational threshold m");
  CLI::App* c_classify = app.add_subcommand("classify", "membership of the configured data");
  CLI::App* c_simulate = app.add_subcommand("simulate", "evolve the configured data");
  CLI::App* c_dichotomy = app.add_subcommand("dichotomy", "sweep and check the outcome gate");
  CLI::App* c_verify = app.add_subcommand("verify", "run the property-verification suite");
  for (CLI::App* sub : {c_threshold, c_classify, c_simulate, c_dichotomy, c_verify})
    add_common(sub);

  CLI11_PARSE(app, argc, argv);

  cnls::ExperimentConfig cfg;
  try {
    cfg = cnls::load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return cnls::kExitConfig;
  }
  if (!output_override.empty()) cfg.output_dir = output_override;

  try {
    if (c_threshold->parsed()) return cnls::cmd_threshold(cfg);
    if (c_classify->parsed()) return cnls::cmd_classify(cfg);
    if (c_simulate->parsed()) return cnls::cmd_simulate(cfg, jobs);
    if (c_dichotomy->parsed()) return cnls::cmd_dichotomy(cfg, jobs);
    if (c_verify->parsed()) return cnls::cmd_verify(cfg);
  } catch (const cnls::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return cnls::kExitConfig;
  } catch (const cnls::GridTooCoarseError& e) {
    std::cerr << e.what() << "\n";
    return cnls::kExitGridRejected;
  } catch (const cnls::SolverError& e) {
    std::cerr << e.what() << "\n";
    return cnls::kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return cnls::kExitConfig;
  }
  return cnls::kExitOk;
}
