#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "shear/scenarios.hpp"

int main(int argc, char** argv) {
  CLI::App app{"shearlab: conditional-mixing toolbox for fiber translation "
               "flows (covariance, shear criterion, lattice counts)"};
  app.require_subcommand(1);

  std::string config_path;
  shear::RunOverrides ov;
  std::int64_t seed = -1;
  int threads = -1;

  CLI::App* run = app.add_subcommand("run", "run a scenario config");
  run->add_option("config", config_path, "config file path")->required();
  run->add_option("--out", ov.out_dir, "output directory (default .)");
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--threads", threads, "worker threads (0 = auto)");

  CLI11_PARSE(app, argc, argv);

  if (seed >= 0) ov.seed = static_cast<std::uint64_t>(seed);
  if (threads >= 0) ov.threads = threads;

  try {
    const shear::Config cfg = shear::Config::parse_file(config_path);
    return shear::run_job(cfg, ov, std::cout);
  } catch (const shear::ConfigError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  }
}
