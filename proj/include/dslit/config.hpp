// Experiment configuration: file ingestion (strict JSON schema, unknown keys
// rejected), figure presets, and defaults for omitted sections.
#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "dslit/errors.hpp"
#include "dslit/fields.hpp"
#include "dslit/interference.hpp"
#include "dslit/trajectories.hpp"

namespace dslit {

struct RenderSpec {
  int width_px = 768;
  int height_px = 768;
  std::string colormap = "white_yellow_orange";
  std::string trajectory_color = "red";

  void validate() const {
    if (width_px < 1) throw ValidationError("render.width_px", "width_px must be >= 1");
    if (height_px < 1) throw ValidationError("render.height_px", "height_px must be >= 1");
    if (colormap != "white_yellow_orange")
      throw ValidationError("render.colormap", "unsupported colormap: " + colormap);
    if (trajectory_color != "red")
      throw ValidationError("render.trajectory_color",
                            "unsupported trajectory_color: " + trajectory_color);
  }
};

/// File-form experiment description. Optional sections fall back to defaults
/// derived from the packets and the grid window.
struct ExperimentConfig {
  PhysicalScales scales;
  std::array<GaussianPacket, 2> packets;
  double forward_speed = 1.0;
  GridSpec grid;
  SeedSpec seeds;
  IntegratorSettings integrator;
  RenderSpec render;

  /// Normalized, validated physics configuration.
  DoubleSlitConfig slit() const {
    return make_config(packets[0], packets[1], scales, forward_speed);
  }
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj,
                                std::initializer_list<const char*> allowed,
                                const std::string& context) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) known = true;
    if (!known)
      throw ValidationError(context + item.key(),
                            "unknown key \"" + item.key() + "\" in " +
                                (context.empty() ? std::string("config root")
                                                 : context.substr(0, context.size() - 1)));
  }
}

inline double require_number(const nlohmann::json& obj, const char* key,
                             const std::string& context) {
  if (!obj.at(key).is_number())
    throw ParseError(context + key + " must be a number");
  return obj.at(key).get<double>();
}

inline double number_or(const nlohmann::json& obj, const char* key,
                        const std::string& context, double fallback) {
  if (!obj.contains(key)) return fallback;
  return require_number(obj, key, context);
}

inline int int_or(const nlohmann::json& obj, const char* key,
                  const std::string& context, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number_integer())
    throw ParseError(context + key + " must be an integer");
  return obj.at(key).get<int>();
}

}  // namespace detail

/// Default seed span: union of the packet center +- 3 sigma0 envelopes.
inline std::pair<double, double> default_seed_span(const ExperimentConfig& cfg) {
  const auto& p1 = cfg.packets[0];
  const auto& p2 = cfg.packets[1];
  return {std::min(p1.center - 3.0 * p1.sigma0, p2.center - 3.0 * p2.sigma0),
          std::max(p1.center + 3.0 * p1.sigma0, p2.center + 3.0 * p2.sigma0)};
}

/// Applies derived defaults for sections the file omitted, then validates.
inline void finalize_config(ExperimentConfig& cfg, bool seeds_span_given,
                            bool base_step_given, bool speed_cap_given) {
  if (!seeds_span_given) {
    const auto span = default_seed_span(cfg);
    cfg.seeds.span_lo = span.first;
    cfg.seeds.span_hi = span.second;
  }
  if (!base_step_given)
    cfg.integrator.base_step = (cfg.grid.t_max - cfg.grid.t_min) / 2000.0;
  if (!speed_cap_given) cfg.integrator.speed_cap = 50.0 * cfg.forward_speed;

  cfg.scales.validate();
  cfg.packets[0].validate();
  cfg.packets[1].validate();
  if (cfg.packets[0].weight == 0.0 && cfg.packets[1].weight == 0.0)
    throw ValidationError("packets", "packet weights must not both be zero");
  if (!(cfg.forward_speed > 0.0) || !std::isfinite(cfg.forward_speed))
    throw ValidationError("forward_speed", "forward_speed must be finite and > 0");
  cfg.grid.validate();
  cfg.seeds.validate();
  cfg.integrator.validate();
  cfg.render.validate();
}

inline ExperimentConfig parse_config_json(const nlohmann::json& root) {
  if (!root.is_object()) throw ParseError("config root must be an object");
  detail::reject_unknown_keys(root,
                              {"scales", "packets", "forward_speed", "grid",
                               "seeds", "integrator", "render"},
                              "");

  ExperimentConfig cfg;
  if (root.contains("scales")) {
    const auto& scales = root.at("scales");
    if (!scales.is_object()) throw ParseError("scales must be an object");
    detail::reject_unknown_keys(scales, {"hbar", "mass"}, "scales.");
    cfg.scales.hbar = detail::number_or(scales, "hbar", "scales.", 1.0);
    cfg.scales.mass = detail::number_or(scales, "mass", "scales.", 1.0);
  }

  if (!root.contains("packets")) throw ParseError("config requires a packets array");
  const auto& packets = root.at("packets");
  if (!packets.is_array() || packets.size() != 2)
    throw ParseError("packets must be an array of exactly 2 entries");
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& p = packets.at(i);
    const std::string context = "packets[" + std::to_string(i) + "].";
    if (!p.is_object()) throw ParseError(context + " must be an object");
    detail::reject_unknown_keys(p, {"center", "drift", "sigma0", "weight"}, context);
    cfg.packets[i].center = detail::require_number(p, "center", context);
    cfg.packets[i].drift = detail::number_or(p, "drift", context, 0.0);
    cfg.packets[i].sigma0 = detail::number_or(p, "sigma0", context, 1.0);
    cfg.packets[i].weight = detail::number_or(p, "weight", context, 1.0);
  }

  cfg.forward_speed = root.contains("forward_speed")
                          ? detail::require_number(root, "forward_speed", "")
                          : 1.0;

  if (root.contains("grid")) {
    const auto& grid = root.at("grid");
    if (!grid.is_object()) throw ParseError("grid must be an object");
    detail::reject_unknown_keys(
        grid, {"x_min", "x_max", "nx", "t_min", "t_max", "nt"}, "grid.");
    cfg.grid.x_min = detail::number_or(grid, "x_min", "grid.", cfg.grid.x_min);
    cfg.grid.x_max = detail::number_or(grid, "x_max", "grid.", cfg.grid.x_max);
    cfg.grid.nx = detail::int_or(grid, "nx", "grid.", cfg.grid.nx);
    cfg.grid.t_min = detail::number_or(grid, "t_min", "grid.", cfg.grid.t_min);
    cfg.grid.t_max = detail::number_or(grid, "t_max", "grid.", cfg.grid.t_max);
    cfg.grid.nt = detail::int_or(grid, "nt", "grid.", cfg.grid.nt);
  }

  bool seeds_span_given = false;
  if (root.contains("seeds")) {
    const auto& seeds = root.at("seeds");
    if (!seeds.is_object()) throw ParseError("seeds must be an object");
    detail::reject_unknown_keys(seeds, {"count", "strategy", "span"}, "seeds.");
    cfg.seeds.count = detail::int_or(seeds, "count", "seeds.", cfg.seeds.count);
    if (seeds.contains("strategy")) {
      const std::string s = seeds.at("strategy").get<std::string>();
      if (s == "equidistant")
        cfg.seeds.strategy = SeedStrategy::equidistant;
      else if (s == "equal_flux")
        cfg.seeds.strategy = SeedStrategy::equal_flux;
      else
        throw ValidationError("seeds.strategy", "unknown seed strategy: " + s);
    }
    if (seeds.contains("span")) {
      const auto& span = seeds.at("span");
      if (!span.is_array() || span.size() != 2 || !span.at(0).is_number() ||
          !span.at(1).is_number())
        throw ParseError("seeds.span must be [lo, hi]");
      cfg.seeds.span_lo = span.at(0).get<double>();
      cfg.seeds.span_hi = span.at(1).get<double>();
      seeds_span_given = true;
    }
  }

  bool base_step_given = false;
  bool speed_cap_given = false;
  if (root.contains("integrator")) {
    const auto& integ = root.at("integrator");
    if (!integ.is_object()) throw ParseError("integrator must be an object");
    detail::reject_unknown_keys(integ, {"base_step", "max_substeps", "speed_cap"},
                                "integrator.");
    if (integ.contains("base_step")) {
      cfg.integrator.base_step =
          detail::require_number(integ, "base_step", "integrator.");
      base_step_given = true;
    }
    cfg.integrator.max_substeps =
        detail::int_or(integ, "max_substeps", "integrator.", cfg.integrator.max_substeps);
    if (integ.contains("speed_cap")) {
      cfg.integrator.speed_cap =
          detail::require_number(integ, "speed_cap", "integrator.");
      speed_cap_given = true;
    }
  }

  if (root.contains("render")) {
    const auto& render = root.at("render");
    if (!render.is_object()) throw ParseError("render must be an object");
    detail::reject_unknown_keys(
        render, {"width_px", "height_px", "colormap", "trajectory_color"},
        "render.");
    cfg.render.width_px = detail::int_or(render, "width_px", "render.", cfg.render.width_px);
    cfg.render.height_px =
        detail::int_or(render, "height_px", "render.", cfg.render.height_px);
    if (render.contains("colormap"))
      cfg.render.colormap = render.at("colormap").get<std::string>();
    if (render.contains("trajectory_color"))
      cfg.render.trajectory_color = render.at("trajectory_color").get<std::string>();
  }

  finalize_config(cfg, seeds_span_given, base_step_given, speed_cap_given);
  return cfg;
}

/// Parses and validates a config file. ParseError on malformed input,
/// ValidationError (naming the field) on invariant violations.
inline ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed config " + path + ": " + e.what());
  }
  try {
    return parse_config_json(root);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed config " + path + ": " + e.what());
  }
}

/// Figure presets. Stated relations: fig2 has opposed drifts; fig3 zero
/// drifts with strong spreading; fig2b drifts (-0.1, +0.4) so v2 = -4 v1;
/// fig2c adds sigma1 = 3 sigma2; fig2d adds weight1 = 2 weight2. Absolute
/// values are documented defaults in natural units (hbar = m = 1).
inline ExperimentConfig preset(const std::string& name) {
  ExperimentConfig cfg;
  cfg.scales = {1.0, 1.0};
  cfg.forward_speed = 1.0;
  cfg.grid = {-12.0, 12.0, 512, 0.0, 20.0, 512};
  cfg.packets[0] = {5.0, -0.25, 1.0, 1.0};
  cfg.packets[1] = {-5.0, 0.25, 1.0, 1.0};

  if (name == "fig2") {
    // symmetric pair, drifts +-0.25
  } else if (name == "fig3") {
    cfg.packets[0].drift = 0.0;
    cfg.packets[1].drift = 0.0;
  } else if (name == "fig2b") {
    cfg.packets[0].drift = -0.1;
    cfg.packets[1].drift = 0.4;
  } else if (name == "fig2c") {
    cfg.packets[0] = {5.0, -0.1, 3.0, 1.0};
    cfg.packets[1] = {-5.0, 0.4, 1.0, 1.0};
  } else if (name == "fig2d") {
    cfg.packets[0] = {5.0, -0.1, 3.0, 2.0};
    cfg.packets[1] = {-5.0, 0.4, 1.0, 1.0};
  } else {
    throw UnknownPreset(name);
  }

  finalize_config(cfg, false, false, false);
  return cfg;
}

inline bool is_preset_name(const std::string& name) {
  return name == "fig2" || name == "fig3" || name == "fig2b" ||
         name == "fig2c" || name == "fig2d";
}

}  // namespace dslit
