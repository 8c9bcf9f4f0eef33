// Flux-line integration through the total velocity field, seed placement,
// pairwise ordering verification, and inter-trajectory flux.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <numeric>
#include <thread>
#include <utility>
#include <vector>

#include "dslit/errors.hpp"
#include "dslit/interference.hpp"
#include "dslit/quadrature.hpp"

namespace dslit {

enum class SeedStrategy { equidistant, equal_flux };

struct SeedSpec {
  int count = 20;
  SeedStrategy strategy = SeedStrategy::equidistant;
  double span_lo = -8.0;
  double span_hi = 8.0;

  void validate() const {
    if (count < 1) throw ValidationError("seeds.count", "seed count must be >= 1");
    if (!(span_hi > span_lo))
      throw DegenerateSpan("seed span must have positive width");
  }
};

struct IntegratorSettings {
  double base_step = 0.01;
  int max_substeps = 40;
  double speed_cap = 50.0;

  void validate() const {
    if (!(base_step > 0.0))
      throw ValidationError("integrator.base_step", "base_step must be > 0");
    if (max_substeps < 1)
      throw ValidationError("integrator.max_substeps", "max_substeps must be >= 1");
    if (!(speed_cap > 0.0))
      throw ValidationError("integrator.speed_cap", "speed_cap must be > 0");
  }
};

/// Time-ordered transverse positions of one flux line; y is implied as
/// forward_speed * t.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> positions;

  std::size_t size() const { return times.size(); }
};

/// Seed positions at t = 0. Equidistant: uniform over the span (endpoints
/// included). Equal-flux: interior quantiles (i+1)/(count+1) of the t = 0
/// intensity mass restricted to the span, so the mass between neighbours
/// (and the end margins) is equal.
inline std::vector<double> seed_positions(const DoubleSlitConfig& cfg,
                                          const SeedSpec& spec) {
  spec.validate();
  std::vector<double> seeds(spec.count);
  if (spec.strategy == SeedStrategy::equidistant) {
    if (spec.count == 1) {
      seeds[0] = 0.5 * (spec.span_lo + spec.span_hi);
    } else {
      const double step = (spec.span_hi - spec.span_lo) / (spec.count - 1);
      for (int i = 0; i < spec.count; ++i) seeds[i] = spec.span_lo + i * step;
      seeds.back() = spec.span_hi;
    }
    return seeds;
  }

  const auto intensity = [&](double x) { return total_intensity(cfg, 0.0, x); };
  const QuadratureOptions quad{1e-13, 1e-13, 48};
  const double total = integrate(intensity, spec.span_lo, spec.span_hi, quad);
  if (!(total > 0.0))
    throw DegenerateSpan("seed span carries no intensity mass at t=0");
  for (int i = 0; i < spec.count; ++i) {
    const double target = total * (i + 1) / (spec.count + 1);
    double lo = spec.span_lo;
    double hi = spec.span_hi;
    double mass_lo = 0.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-14 * (spec.span_hi - spec.span_lo);
         ++iter) {
      const double mid = 0.5 * (lo + hi);
      const double mass_mid = mass_lo + integrate(intensity, lo, mid, quad, 4);
      if (mass_mid < target) {
        lo = mid;
        mass_lo = mass_mid;
      } else {
        hi = mid;
      }
    }
    seeds[i] = 0.5 * (lo + hi);
  }
  return seeds;
}

namespace detail {

inline double min_sigma(const DoubleSlitConfig& cfg, double t) {
  return std::min(sigma_t(cfg.packet1, cfg.scales, t),
                  sigma_t(cfg.packet2, cfg.scales, t));
}

// One RK4 step of dx/dt = v_x(t, x) with recursive halving whenever a stage
// lands below the node floor, exceeds the speed cap, or moves more than
// sigma_min/50 within the step.
inline double rk4_advance(const DoubleSlitConfig& cfg, double t, double x,
                          double h, int depth,
                          const IntegratorSettings& settings) {
  bool needs_split = false;
  double x_next = x;
  try {
    const double k1 = total_velocity(cfg, t, x).x;
    const double k2 = total_velocity(cfg, t + 0.5 * h, x + 0.5 * h * k1).x;
    const double k3 = total_velocity(cfg, t + 0.5 * h, x + 0.5 * h * k2).x;
    const double k4 = total_velocity(cfg, t + h, x + h * k3).x;
    const double vmax = std::max({std::abs(k1), std::abs(k2), std::abs(k3),
                                  std::abs(k4)});
    if (vmax > settings.speed_cap || vmax * h > min_sigma(cfg, t) / 50.0)
      needs_split = true;
    else
      x_next = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  } catch (const NodeSingularity&) {
    needs_split = true;
  }
  if (!needs_split) return x_next;
  if (depth >= settings.max_substeps) throw StuckAtNode(t, x);
  const double xm = rk4_advance(cfg, t, x, 0.5 * h, depth + 1, settings);
  return rk4_advance(cfg, t + 0.5 * h, xm, 0.5 * h, depth + 1, settings);
}

}  // namespace detail

/// Integrates one flux line from (t_start, x0) to t_end, recording a sample
/// at every base step. The step lattice divides [t_start, t_end] into
/// round((t_end - t_start)/base_step) equal steps so batches share sample
/// times exactly.
inline Trajectory integrate_flux_line(const DoubleSlitConfig& cfg, double x0,
                                      double t_start, double t_end,
                                      const IntegratorSettings& settings) {
  settings.validate();
  if (!(t_end > t_start))
    throw OutOfRange("integration window must have t_end > t_start");
  if (!(total_intensity(cfg, t_start, x0) > node_floor(cfg, t_start)))
    throw InvalidSeed(t_start, x0);

  const double span = t_end - t_start;
  const long n_steps = std::max(1L, std::lround(span / settings.base_step));
  const double h = span / static_cast<double>(n_steps);

  Trajectory traj;
  traj.times.reserve(n_steps + 1);
  traj.positions.reserve(n_steps + 1);
  traj.times.push_back(t_start);
  traj.positions.push_back(x0);

  double x = x0;
  for (long k = 0; k < n_steps; ++k) {
    const double t = t_start + k * h;
    x = detail::rk4_advance(cfg, t, x, h, 0, settings);
    if (!std::isfinite(x)) throw StuckAtNode(t, x);
    traj.times.push_back(k + 1 == n_steps ? t_end : t_start + (k + 1) * h);
    traj.positions.push_back(x);
  }
  return traj;
}

/// Integrates a family of seeds; results are gathered in seed order. Each
/// integration is independent, so workers > 1 changes nothing but wall time.
inline std::vector<Trajectory> integrate_batch(const DoubleSlitConfig& cfg,
                                               const std::vector<double>& seeds,
                                               double t_start, double t_end,
                                               const IntegratorSettings& settings,
                                               unsigned workers = 0) {
  if (workers == 0)
    workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, std::max<std::size_t>(seeds.size(), 1));

  std::vector<Trajectory> result(seeds.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i)
      result[i] = integrate_flux_line(cfg, seeds[i], t_start, t_end, settings);
    return result;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < seeds.size(); i += workers)
          result[i] = integrate_flux_line(cfg, seeds[i], t_start, t_end, settings);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return result;
}

struct OrderingReport {
  bool passed = true;
  std::size_t time_index = 0;
  double time = 0.0;
  std::size_t first = 0;   // indices of the first violating pair
  std::size_t second = 0;
};

/// Verifies that the x-ordering of all trajectories is identical at every
/// shared sample time; reports the first violation if any.
inline OrderingReport ordering_check(const std::vector<Trajectory>& trajs) {
  OrderingReport report;
  if (trajs.size() < 2) return report;
  const auto& times = trajs.front().times;
  for (const auto& tr : trajs) {
    if (tr.times.size() != times.size() ||
        !std::equal(tr.times.begin(), tr.times.end(), times.begin()))
      throw MismatchedSampling("trajectories do not share sample times");
  }

  std::vector<std::size_t> order(trajs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return trajs[a].positions.front() < trajs[b].positions.front();
  });

  for (std::size_t k = 0; k < times.size(); ++k) {
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      if (trajs[order[i]].positions[k] > trajs[order[i + 1]].positions[k]) {
        report.passed = false;
        report.time_index = k;
        report.time = times[k];
        report.first = order[i];
        report.second = order[i + 1];
        return report;
      }
    }
  }
  return report;
}

namespace detail {

inline double position_at(const Trajectory& traj, double t) {
  if (traj.times.empty() || t < traj.times.front() || t > traj.times.back())
    throw OutOfRange("trajectory not defined at t=" + std::to_string(t));
  const auto it = std::lower_bound(traj.times.begin(), traj.times.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - traj.times.begin());
  if (hi == 0 || traj.times[hi] == t) return traj.positions[hi];
  const std::size_t lo = hi - 1;
  const double w = (t - traj.times[lo]) / (traj.times[hi] - traj.times[lo]);
  return traj.positions[lo] + w * (traj.positions[hi] - traj.positions[lo]);
}

}  // namespace detail

/// Probability mass between the two flux-line positions at time t.
inline double flux_between(const DoubleSlitConfig& cfg, const Trajectory& a,
                           const Trajectory& b, double t) {
  const double xa = detail::position_at(a, t);
  const double xb = detail::position_at(b, t);
  const double lo = std::min(xa, xb);
  const double hi = std::max(xa, xb);
  if (lo == hi) return 0.0;
  return integrate([&](double x) { return total_intensity(cfg, t, x); }, lo, hi,
                   QuadratureOptions{1e-13, 1e-13, 48}, 8);
}

}  // namespace dslit
