// Rectangular (x, t) grid sampling of intensity, velocity, and continuity
// residuals. Rows (fixed t) are independent work units; identical spec and
// config yield bit-identical grids regardless of worker count.
#pragma once

#include <cmath>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

#include "dslit/errors.hpp"
#include "dslit/interference.hpp"

namespace dslit {

struct GridSpec {
  double x_min = -12.0;
  double x_max = 12.0;
  int nx = 512;
  double t_min = 0.0;
  double t_max = 20.0;
  int nt = 512;

  void validate() const {
    if (!(x_max > x_min)) throw ValidationError("grid.x_max", "x_max must exceed x_min");
    if (!(t_max > t_min)) throw ValidationError("grid.t_max", "t_max must exceed t_min");
    if (nx < 2) throw ValidationError("grid.nx", "nx must be >= 2");
    if (nt < 2) throw ValidationError("grid.nt", "nt must be >= 2");
  }

  double x_at(int j) const { return x_min + j * (x_max - x_min) / (nx - 1); }
  double t_at(int i) const { return t_min + i * (t_max - t_min) / (nt - 1); }
  double dx() const { return (x_max - x_min) / (nx - 1); }
  double dt() const { return (t_max - t_min) / (nt - 1); }
};

/// Row-major (nt x nx) sampled field. `mask` is empty for total fields;
/// for velocity grids mask[i] == 1 flags a below-floor cell whose value is
/// a (0,0) sentinel rather than a field sample.
template <typename T>
struct FieldGrid {
  GridSpec spec;
  std::vector<T> values;
  std::vector<std::uint8_t> mask;

  const T& at(int i, int j) const { return values[static_cast<std::size_t>(i) * spec.nx + j]; }
  T& at(int i, int j) { return values[static_cast<std::size_t>(i) * spec.nx + j]; }
  bool masked(int i, int j) const {
    return !mask.empty() && mask[static_cast<std::size_t>(i) * spec.nx + j] != 0;
  }
  double masked_fraction() const {
    if (mask.empty()) return 0.0;
    std::size_t n = 0;
    for (auto m : mask) n += m != 0;
    return static_cast<double>(n) / static_cast<double>(mask.size());
  }
};

namespace detail {

template <typename RowFn>
void for_each_row(int nt, RowFn&& fn, unsigned workers) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(nt));
  if (workers <= 1) {
    for (int i = 0; i < nt; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = static_cast<int>(w); i < nt; i += static_cast<int>(workers)) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace detail

inline FieldGrid<double> sample_intensity(const DoubleSlitConfig& cfg,
                                          const GridSpec& spec,
                                          unsigned workers = 0) {
  spec.validate();
  FieldGrid<double> grid{spec, std::vector<double>(
                                   static_cast<std::size_t>(spec.nt) * spec.nx),
                         {}};
  detail::for_each_row(
      spec.nt,
      [&](int i) {
        const double t = spec.t_at(i);
        for (int j = 0; j < spec.nx; ++j)
          grid.at(i, j) = total_intensity(cfg, t, spec.x_at(j));
      },
      workers);
  return grid;
}

/// Velocity samples; cells below the node floor carry a (0,0) sentinel and a
/// set mask bit instead of an exception (node cells are expected in grids).
inline FieldGrid<Vec2> sample_velocity(const DoubleSlitConfig& cfg,
                                       const GridSpec& spec,
                                       unsigned workers = 0) {
  spec.validate();
  const std::size_t n = static_cast<std::size_t>(spec.nt) * spec.nx;
  FieldGrid<Vec2> grid{spec, std::vector<Vec2>(n), std::vector<std::uint8_t>(n, 0)};
  detail::for_each_row(
      spec.nt,
      [&](int i) {
        const double t = spec.t_at(i);
        const double floor = node_floor(cfg, t);
        for (int j = 0; j < spec.nx; ++j) {
          const double x = spec.x_at(j);
          const double intensity = total_intensity(cfg, t, x);
          if (intensity > floor) {
            const Vec2 jcur = total_current(cfg, t, x);
            grid.at(i, j) = {jcur.x / intensity, jcur.y / intensity};
          } else {
            grid.mask[static_cast<std::size_t>(i) * spec.nx + j] = 1;
          }
        }
      },
      workers);
  return grid;
}

/// Finite-difference continuity residual dP/dt + dJ_x/dx on the grid.
/// Interior cells use central stencils; boundary cells use one-sided stencils
/// and are excluded from norms.
inline FieldGrid<double> continuity_residual_map(const DoubleSlitConfig& cfg,
                                                 const GridSpec& spec,
                                                 unsigned workers = 0) {
  spec.validate();
  if (spec.nx < 5 || spec.nt < 5)
    throw ValidationError("grid.nx", "continuity residual needs nx, nt >= 5");

  FieldGrid<double> intensity = sample_intensity(cfg, spec, workers);
  FieldGrid<double> jx{spec, std::vector<double>(intensity.values.size()), {}};
  detail::for_each_row(
      spec.nt,
      [&](int i) {
        const double t = spec.t_at(i);
        for (int j = 0; j < spec.nx; ++j)
          jx.at(i, j) = total_current(cfg, t, spec.x_at(j)).x;
      },
      workers);

  FieldGrid<double> residual{spec, std::vector<double>(intensity.values.size()), {}};
  const double dt = spec.dt();
  const double dx = spec.dx();
  for (int i = 0; i < spec.nt; ++i) {
    for (int j = 0; j < spec.nx; ++j) {
      double dpdt;
      if (i == 0)
        dpdt = (intensity.at(1, j) - intensity.at(0, j)) / dt;
      else if (i == spec.nt - 1)
        dpdt = (intensity.at(i, j) - intensity.at(i - 1, j)) / dt;
      else
        dpdt = (intensity.at(i + 1, j) - intensity.at(i - 1, j)) / (2.0 * dt);
      double djdx;
      if (j == 0)
        djdx = (jx.at(i, 1) - jx.at(i, 0)) / dx;
      else if (j == spec.nx - 1)
        djdx = (jx.at(i, j) - jx.at(i, j - 1)) / dx;
      else
        djdx = (jx.at(i, j + 1) - jx.at(i, j - 1)) / (2.0 * dx);
      residual.at(i, j) = dpdt + djdx;
    }
  }
  return residual;
}

/// Max and mean absolute residual over interior cells.
struct ResidualNorms {
  double max_abs = 0.0;
  double mean_abs = 0.0;
};

inline ResidualNorms interior_norms(const FieldGrid<double>& residual) {
  ResidualNorms norms;
  const auto& spec = residual.spec;
  std::size_t count = 0;
  for (int i = 1; i + 1 < spec.nt; ++i) {
    for (int j = 1; j + 1 < spec.nx; ++j) {
      const double r = std::abs(residual.at(i, j));
      norms.max_abs = std::max(norms.max_abs, r);
      norms.mean_abs += r;
      ++count;
    }
  }
  if (count > 0) norms.mean_abs /= static_cast<double>(count);
  return norms;
}

}  // namespace dslit
