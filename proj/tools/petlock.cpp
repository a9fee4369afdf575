#include <map>
#include <string>

#include <CLI11.hpp>

#include "petlock/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"petlock: docking interface analyses from JSON scenarios"};
  app.require_subcommand(1, 1);

  petlock::cli::RunOptions opt;
  std::optional<double> resolution;
  const std::map<std::string, std::string> about{
      {"mechanism", "wedge movability, self-locking verdict and stroke traces"},
      {"envelope", "capture envelope limits and direction sweep"},
      {"calibrate", "fit the face profile to envelope targets"},
      {"couple", "replay a coupling event script"},
      {"loads", "load utilization and stress estimates"},
      {"assembly", "dock, route power, send frames and propagate wrenches"}};
  for (const std::string& name : petlock::cli::commands()) {
    CLI::App* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("--scenario", opt.scenario_path, "scenario JSON file")->required();
    sub->add_option("--out", opt.out_dir, "output directory")->required();
    sub->add_option("--seed", opt.seed, "seed for randomized search order");
    sub->add_option("--resolution", resolution, "angular sweep resolution in degrees")
        ->check(CLI::PositiveNumber);
    sub->callback([&opt, name] { opt.command = name; });
  }
  CLI11_PARSE(app, argc, argv);
  opt.resolution_deg = resolution;
  return petlock::cli::run(opt);
}
