#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dslit/pipeline.hpp"

using namespace dslit;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

ExperimentConfig small_experiment() {
  ExperimentConfig cfg = preset("fig2");
  cfg.grid.nx = 48;
  cfg.grid.nt = 48;
  cfg.seeds.count = 6;
  cfg.integrator.base_step = 0.05;
  cfg.render.width_px = 120;
  cfg.render.height_px = 80;
  return cfg;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Simulate, WritesGridCsvDeterministically) {
  const auto cfg = small_experiment();
  const auto dir = fresh_dir("dslit_sim");
  const auto result = run_simulate(cfg, dir);
  ASSERT_EQ(result.exit_code, 0);
  const std::string first = slurp(result.outputs.front());
  // header plus nt * nx data rows
  const auto rows = std::count(first.begin(), first.end(), '\n');
  EXPECT_EQ(rows, 1 + 48 * 48);
  EXPECT_EQ(first.substr(0, 10), "t,x,value\n");

  const auto again = run_simulate(cfg, dir);
  EXPECT_EQ(first, slurp(again.outputs.front()));
}

TEST(Trajectories, CsvSchemaAndDeterminism) {
  const auto cfg = small_experiment();
  const auto dir = fresh_dir("dslit_traj");
  const auto result = run_trajectories(cfg, dir);
  const std::string csv = slurp(result.outputs.front());
  EXPECT_EQ(csv.substr(0, 17), "seed_index,t,x,y\n");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  // first sample of seed 0 sits at t = 0, y = 0
  EXPECT_EQ(line.substr(0, 4), "0,0,");
  const auto again = run_trajectories(cfg, dir);
  EXPECT_EQ(csv, slurp(again.outputs.front()));
}

TEST(Render, PngDimensionsMatchSpec) {
  const auto cfg = small_experiment();
  const auto dir = fresh_dir("dslit_render");
  const auto result = run_render(cfg, dir);
  const std::string png = slurp(result.outputs.front());
  ASSERT_GT(png.size(), 33u);
  EXPECT_EQ(png.substr(1, 3), "PNG");
  const auto be32 = [&](std::size_t offset) {
    return (static_cast<unsigned>(static_cast<unsigned char>(png[offset])) << 24) |
           (static_cast<unsigned>(static_cast<unsigned char>(png[offset + 1])) << 16) |
           (static_cast<unsigned>(static_cast<unsigned char>(png[offset + 2])) << 8) |
           static_cast<unsigned>(static_cast<unsigned char>(png[offset + 3]));
  };
  EXPECT_EQ(be32(16), 120u);  // IHDR width
  EXPECT_EQ(be32(20), 80u);   // IHDR height

  const auto again = run_render(cfg, dir);
  EXPECT_EQ(png, slurp(again.outputs.front()));
}

TEST(Render, HeatColorControlPoints) {
  const Rgb white = heat_color(0.0);
  EXPECT_EQ(white.r, 255);
  EXPECT_EQ(white.g, 255);
  EXPECT_EQ(white.b, 255);
  const Rgb yellow = heat_color(0.5);
  EXPECT_EQ(yellow.r, 255);
  EXPECT_EQ(yellow.g, 255);
  EXPECT_EQ(yellow.b, 0);
  const Rgb orange = heat_color(1.0);
  EXPECT_EQ(orange.r, 255);
  EXPECT_EQ(orange.g, 165);
  EXPECT_EQ(orange.b, 0);
}

TEST(Validate, SymmetricPresetPassesAndIsDeterministic) {
  ExperimentConfig cfg = preset("fig2");
  const auto dir_a = fresh_dir("dslit_val_a");
  const auto dir_b = fresh_dir("dslit_val_b");
  const auto first = run_validate(cfg, dir_a, 2);
  EXPECT_EQ(first.exit_code, 0);
  const auto second = run_validate(cfg, dir_b, 2);
  EXPECT_EQ(slurp(first.outputs[0]), slurp(second.outputs[0]));
  EXPECT_EQ(slurp(first.outputs[1]), slurp(second.outputs[1]));
  const std::string text = slurp(first.outputs[0]);
  EXPECT_NE(text.find("OVERALL PASS"), std::string::npos);
  const std::string json = slurp(first.outputs[1]);
  EXPECT_NE(json.find("\"oracle_max_rel_error\""), std::string::npos);
  EXPECT_NE(json.find("\"no_crossing\": \"pass\""), std::string::npos);
}

TEST(Cli, EndToEndSubcommands) {
  const auto dir = fresh_dir("dslit_cli");
  const std::string binary = DSLIT_CLI_PATH;
  const std::string base = binary + " simulate --preset fig2 --grid 32,32 --out " +
                           dir.string();
  ASSERT_EQ(std::system(base.c_str()), 0);
  EXPECT_TRUE(fs::exists(dir / "intensity.csv"));

  const std::string bad = binary + " simulate --preset nope --out " + dir.string();
  EXPECT_NE(std::system(bad.c_str()), 0);

  const std::string missing = binary + " simulate --out " + dir.string();
  EXPECT_NE(std::system(missing.c_str()), 0);
}
