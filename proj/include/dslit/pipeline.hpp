// Subcommand pipelines shared by the CLI and the integration tests: each run
// takes a validated experiment, writes its artifacts, and returns the paths.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dslit/config.hpp"
#include "dslit/csv.hpp"
#include "dslit/render.hpp"
#include "dslit/validate.hpp"

namespace dslit {

struct RunResult {
  std::vector<std::filesystem::path> outputs;
  int exit_code = 0;
};

/// simulate: intensity grid CSV (`intensity.csv`).
inline RunResult run_simulate(const ExperimentConfig& experiment,
                              const std::filesystem::path& out_dir,
                              unsigned workers = 0) {
  const auto grid = sample_intensity(experiment.slit(), experiment.grid, workers);
  const auto path = out_dir / "intensity.csv";
  write_file_atomic(path, intensity_csv(grid));
  return {{path}, 0};
}

/// trajectories: flux-line samples CSV (`trajectories.csv`).
inline RunResult run_trajectories(const ExperimentConfig& experiment,
                                  const std::filesystem::path& out_dir,
                                  unsigned workers = 0) {
  const DoubleSlitConfig cfg = experiment.slit();
  const auto seeds = seed_positions(cfg, experiment.seeds);
  const auto trajs = integrate_batch(cfg, seeds, experiment.grid.t_min,
                                     experiment.grid.t_max,
                                     experiment.integrator, workers);
  const auto path = out_dir / "trajectories.csv";
  write_file_atomic(path, trajectories_csv(trajs, experiment.forward_speed));
  return {{path}, 0};
}

/// validate: report.txt + report.json; exit code 1 when any check fails.
inline RunResult run_validate(const ExperimentConfig& experiment,
                              const std::filesystem::path& out_dir,
                              unsigned workers = 0) {
  const auto report = run_validation(experiment, workers);
  const auto txt_path = out_dir / "report.txt";
  const auto json_path = out_dir / "report.json";
  write_file_atomic(txt_path, report_text(report));
  write_file_atomic(json_path, report_json(report));
  return {{txt_path, json_path}, report.all_pass() ? 0 : 1};
}

/// render: intensity heatmap with flux-line overlay (`render.png`).
inline RunResult run_render(const ExperimentConfig& experiment,
                            const std::filesystem::path& out_dir,
                            unsigned workers = 0) {
  const DoubleSlitConfig cfg = experiment.slit();
  const auto grid = sample_intensity(cfg, experiment.grid, workers);
  Image img = render_heatmap(grid, experiment.render.width_px,
                             experiment.render.height_px);
  const auto seeds = seed_positions(cfg, experiment.seeds);
  const auto trajs = integrate_batch(cfg, seeds, experiment.grid.t_min,
                                     experiment.grid.t_max,
                                     experiment.integrator, workers);
  overlay_trajectories(img, experiment.grid, trajs);
  const auto path = out_dir / "render.png";
  write_file_atomic(path, encode_png(img));
  return {{path}, 0};
}

}  // namespace dslit
