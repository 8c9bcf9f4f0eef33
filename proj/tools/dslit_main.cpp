// dslit command line: simulate | trajectories | validate | render over a
// config file or a named preset.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dslit/dslit.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string preset_name;
  std::string out_dir = "out";
  std::string grid_override;
  int seeds_override = 0;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  auto* config = cmd->add_option("--config", args.config_path, "Config file path");
  auto* preset = cmd->add_option("--preset", args.preset_name,
                                 "Preset name (fig2, fig3, fig2b, fig2c, fig2d)");
  config->excludes(preset);
  cmd->add_option("--out", args.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--grid", args.grid_override, "Grid resolution override, nx,nt");
  cmd->add_option("--seeds", args.seeds_override, "Seed count override");
  cmd->add_option("--format", args.format, "Output format (csv)")
      ->capture_default_str();
}

dslit::ExperimentConfig load_experiment(const CommonArgs& args) {
  if (args.config_path.empty() && args.preset_name.empty())
    throw dslit::ParseError("one of --config or --preset is required");
  dslit::ExperimentConfig experiment = args.config_path.empty()
                                           ? dslit::preset(args.preset_name)
                                           : dslit::parse_config(args.config_path);
  if (!args.grid_override.empty()) {
    int nx = 0;
    int nt = 0;
    if (std::sscanf(args.grid_override.c_str(), "%d,%d", &nx, &nt) != 2)
      throw dslit::ParseError("--grid expects nx,nt");
    experiment.grid.nx = nx;
    experiment.grid.nt = nt;
    experiment.grid.validate();
  }
  if (args.seeds_override > 0) experiment.seeds.count = args.seeds_override;
  if (args.format != "csv")
    throw dslit::ParseError("unsupported --format: " + args.format);
  return experiment;
}

std::string context_of(const CommonArgs& args) {
  return args.config_path.empty() ? "preset " + args.preset_name
                                  : "config " + args.config_path;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-slit interference simulator: superposed Gaussian "
               "channels, averaged probability currents, and flux-line "
               "trajectories with a complex-amplitude cross-check."};
  app.require_subcommand(1);

  CommonArgs args;
  auto* simulate = app.add_subcommand("simulate", "Export the intensity grid as CSV");
  auto* trajectories =
      app.add_subcommand("trajectories", "Integrate flux lines and export CSV");
  auto* validate = app.add_subcommand(
      "validate", "Run the validation checks; nonzero exit on failure");
  auto* render = app.add_subcommand(
      "render", "Render the intensity heatmap with trajectory overlay (PNG)");
  for (auto* cmd : {simulate, trajectories, validate, render}) add_common(cmd, args);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto experiment = load_experiment(args);
    const std::filesystem::path out_dir(args.out_dir);
    dslit::RunResult result;
    if (simulate->parsed()) {
      result = dslit::run_simulate(experiment, out_dir);
    } else if (trajectories->parsed()) {
      result = dslit::run_trajectories(experiment, out_dir);
    } else if (validate->parsed()) {
      result = dslit::run_validate(experiment, out_dir);
      std::ifstream report(result.outputs.front());
      std::cout << report.rdbuf();
    } else {
      result = dslit::run_render(experiment, out_dir);
    }
    for (const auto& path : result.outputs)
      std::cout << "wrote " << path.string() << "\n";
    return result.exit_code;
  } catch (const dslit::ValidationError& e) {
    std::cerr << "error [" << context_of(args) << ", field " << e.field
              << "]: " << e.what() << "\n";
    return 2;
  } catch (const dslit::SimulationError& e) {
    std::cerr << "error [" << context_of(args) << "]: " << e.what() << "\n";
    return 2;
  }
}
