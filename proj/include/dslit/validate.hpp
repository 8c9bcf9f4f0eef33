// Validation checks backing the `validate` subcommand: oracle equivalence,
// continuity-law convergence, mass conservation, no-crossing, and flux-line
// drift. Thresholds are fixed here; `validate` exits nonzero if any fails.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dslit/config.hpp"
#include "dslit/csv.hpp"
#include "dslit/fields.hpp"
#include "dslit/oracle.hpp"
#include "dslit/trajectories.hpp"

namespace dslit {

// Acceptance thresholds.
inline constexpr double kOracleTol = 1e-9;
inline constexpr double kContinuityRatioLo = 3.5;
inline constexpr double kContinuityRatioHi = 4.5;
inline constexpr double kMassDriftTol = 1e-4;
inline constexpr double kFluxDriftTol = 0.01;

struct OracleComparison {
  // Max over above-floor cells of |J_cl - J_q| / |J_q(cell)|.
  double pointwise_rel_max = 0.0;
  // Max difference normalized by the oracle field's peak magnitude.
  double field_rel_max = 0.0;
  std::size_t cells_compared = 0;
};

/// Compares the classical current against the complex-amplitude current on a
/// grid, over cells whose intensity exceeds 1e-12 of the grid's peak.
inline OracleComparison compare_currents(const DoubleSlitConfig& cfg,
                                         const GridSpec& spec) {
  spec.validate();
  OracleComparison cmp;
  std::vector<double> intensities(static_cast<std::size_t>(spec.nt) * spec.nx);
  double peak = 0.0;
  for (int i = 0; i < spec.nt; ++i) {
    const double t = spec.t_at(i);
    for (int j = 0; j < spec.nx; ++j) {
      const double v = total_intensity(cfg, t, spec.x_at(j));
      intensities[static_cast<std::size_t>(i) * spec.nx + j] = v;
      peak = std::max(peak, v);
    }
  }
  const double floor = 1e-12 * peak;

  double max_diff = 0.0;
  double max_mag = 0.0;
  for (int i = 0; i < spec.nt; ++i) {
    const double t = spec.t_at(i);
    for (int j = 0; j < spec.nx; ++j) {
      if (!(intensities[static_cast<std::size_t>(i) * spec.nx + j] > floor))
        continue;
      const double x = spec.x_at(j);
      const Vec2 jc = total_current(cfg, t, x);
      const Vec2 jq = quantum_current(cfg, t, x);
      const double diff = std::hypot(jc.x - jq.x, jc.y - jq.y);
      const double mag = std::hypot(jq.x, jq.y);
      max_diff = std::max(max_diff, diff);
      max_mag = std::max(max_mag, mag);
      if (mag > 0.0)
        cmp.pointwise_rel_max = std::max(cmp.pointwise_rel_max, diff / mag);
      ++cmp.cells_compared;
    }
  }
  cmp.field_rel_max = max_mag > 0.0 ? max_diff / max_mag : 0.0;
  return cmp;
}

struct ContinuityCheck {
  double interior_max_finest = 0.0;
  std::array<double, 3> ratios{0.0, 0.0, 0.0};
  bool second_order = false;
};

/// Interior continuity residual over four grid refinements (both steps halve
/// each level); second-order convergence means every ratio lies in
/// [kContinuityRatioLo, kContinuityRatioHi].
inline ContinuityCheck check_continuity_order(const DoubleSlitConfig& cfg,
                                              const GridSpec& window,
                                              unsigned workers = 0) {
  ContinuityCheck check;
  std::array<double, 4> max_residual{};
  for (int level = 0; level < 4; ++level) {
    GridSpec spec = window;
    spec.nx = 64 * (1 << level) + 1;
    spec.nt = 64 * (1 << level) + 1;
    const auto residual = continuity_residual_map(cfg, spec, workers);
    max_residual[level] = interior_norms(residual).max_abs;
  }
  check.interior_max_finest = max_residual[3];
  check.second_order = true;
  for (int k = 0; k < 3; ++k) {
    check.ratios[k] =
        max_residual[k + 1] > 0.0 ? max_residual[k] / max_residual[k + 1] : 0.0;
    if (!(check.ratios[k] >= kContinuityRatioLo &&
          check.ratios[k] <= kContinuityRatioHi))
      check.second_order = false;
  }
  return check;
}

/// Max deviation of the Riemann row mass from one over the time window,
/// sampled on a window wide enough to cover both envelopes to +-10 sigma(t).
inline double check_mass_drift(const DoubleSlitConfig& cfg, double t_min,
                               double t_max, int n_rows = 65, int nx = 4096) {
  double lo = 0.0;
  double hi = 0.0;
  for (int i = 0; i < n_rows; ++i) {
    const double t = t_min + i * (t_max - t_min) / (n_rows - 1);
    for (const auto* p : {&cfg.packet1, &cfg.packet2}) {
      const double s = sigma_t(*p, cfg.scales, t);
      lo = std::min(lo, p->center_at(t) - 10.0 * s);
      hi = std::max(hi, p->center_at(t) + 10.0 * s);
    }
  }
  const double dx = (hi - lo) / nx;
  double worst = 0.0;
  for (int i = 0; i < n_rows; ++i) {
    const double t = t_min + i * (t_max - t_min) / (n_rows - 1);
    double mass = 0.0;
    for (int j = 0; j < nx; ++j)
      mass += total_intensity(cfg, t, lo + (j + 0.5) * dx);
    mass *= dx;
    worst = std::max(worst, std::abs(mass - 1.0));
  }
  return worst;
}

struct FluxCheck {
  double max_drift = 0.0;  // max over adjacent pairs of |flux(t)-flux(0)|/flux(0)
};

/// Flux-line property: the probability mass between adjacent trajectories is
/// time-invariant.
inline FluxCheck check_flux_invariance(const DoubleSlitConfig& cfg,
                                       const std::vector<Trajectory>& trajs,
                                       int n_times = 11) {
  FluxCheck check;
  if (trajs.size() < 2) return check;
  const double t0 = trajs.front().times.front();
  const double t1 = trajs.front().times.back();
  for (std::size_t p = 0; p + 1 < trajs.size(); ++p) {
    const double flux0 = flux_between(cfg, trajs[p], trajs[p + 1], t0);
    if (!(flux0 > 0.0)) continue;
    for (int k = 1; k < n_times; ++k) {
      const double t = t0 + k * (t1 - t0) / (n_times - 1);
      const double flux = flux_between(cfg, trajs[p], trajs[p + 1], t);
      check.max_drift = std::max(check.max_drift, std::abs(flux - flux0) / flux0);
    }
  }
  return check;
}

struct ValidationReport {
  double oracle_max_rel_error = 0.0;
  double continuity_interior_max = 0.0;
  double mass_drift = 0.0;
  bool no_crossing = false;
  double flux_max_drift = 0.0;

  std::array<double, 3> continuity_ratios{0.0, 0.0, 0.0};
  bool oracle_pass = false;
  bool continuity_pass = false;
  bool mass_pass = false;
  bool flux_pass = false;

  bool all_pass() const {
    return oracle_pass && continuity_pass && mass_pass && no_crossing && flux_pass;
  }
};

/// Runs every check on one experiment. The seed family, window, and
/// integrator settings come from the config.
inline ValidationReport run_validation(const ExperimentConfig& experiment,
                                       unsigned workers = 0) {
  const DoubleSlitConfig cfg = experiment.slit();
  ValidationReport report;

  GridSpec oracle_spec = experiment.grid;
  oracle_spec.nx = 256;
  oracle_spec.nt = 256;
  const auto oracle = compare_currents(cfg, oracle_spec);
  report.oracle_max_rel_error = oracle.pointwise_rel_max;
  report.oracle_pass = report.oracle_max_rel_error <= kOracleTol;

  const auto continuity = check_continuity_order(cfg, experiment.grid, workers);
  report.continuity_interior_max = continuity.interior_max_finest;
  report.continuity_ratios = continuity.ratios;
  report.continuity_pass = continuity.second_order;

  report.mass_drift =
      check_mass_drift(cfg, experiment.grid.t_min, experiment.grid.t_max);
  report.mass_pass = report.mass_drift < kMassDriftTol;

  const auto seeds = seed_positions(cfg, experiment.seeds);
  const auto trajs =
      integrate_batch(cfg, seeds, experiment.grid.t_min, experiment.grid.t_max,
                      experiment.integrator, workers);
  report.no_crossing = ordering_check(trajs).passed;

  report.flux_max_drift = check_flux_invariance(cfg, trajs).max_drift;
  report.flux_pass = report.flux_max_drift < kFluxDriftTol;

  return report;
}

inline std::string report_text(const ValidationReport& r) {
  std::ostringstream out;
  const auto line = [&](const char* name, bool pass, const std::string& detail) {
    out << (pass ? "PASS" : "FAIL") << "  " << name << "  " << detail << "\n";
  };
  line("oracle_equivalence", r.oracle_pass,
       "max_rel_error=" + format_double(r.oracle_max_rel_error) +
           " (tol " + format_double(kOracleTol) + ")");
  line("continuity_order", r.continuity_pass,
       "interior_max=" + format_double(r.continuity_interior_max) +
           " ratios=" + format_double(r.continuity_ratios[0]) + "," +
           format_double(r.continuity_ratios[1]) + "," +
           format_double(r.continuity_ratios[2]) + " (each in [3.5,4.5])");
  line("mass_conservation", r.mass_pass,
       "mass_drift=" + format_double(r.mass_drift) + " (tol " +
           format_double(kMassDriftTol) + ")");
  line("no_crossing", r.no_crossing, r.no_crossing ? "ordering preserved" : "ordering violated");
  line("flux_invariance", r.flux_pass,
       "flux_max_drift=" + format_double(r.flux_max_drift) + " (tol " +
           format_double(kFluxDriftTol) + ")");
  out << (r.all_pass() ? "OVERALL PASS" : "OVERALL FAIL") << "\n";
  return out.str();
}

inline std::string report_json(const ValidationReport& r) {
  nlohmann::ordered_json j;
  j["oracle_max_rel_error"] = r.oracle_max_rel_error;
  j["continuity_interior_max"] = r.continuity_interior_max;
  j["continuity_ratios"] = r.continuity_ratios;
  j["mass_drift"] = r.mass_drift;
  j["no_crossing"] = r.no_crossing ? "pass" : "fail";
  j["flux_max_drift"] = r.flux_max_drift;
  j["checks"] = {{"oracle_equivalence", r.oracle_pass},
                 {"continuity_order", r.continuity_pass},
                 {"mass_conservation", r.mass_pass},
                 {"no_crossing", r.no_crossing},
                 {"flux_invariance", r.flux_pass}};
  j["overall"] = r.all_pass() ? "pass" : "fail";
  return j.dump(2) + "\n";
}

}  // namespace dslit
