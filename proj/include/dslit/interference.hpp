// Superposition of two packet channels: phase difference, total intensity,
// total averaged current, total velocity field, and dark-node locations.
//
// Geometry: packet 1 sits at +X with drift v_x (v_x < 0 approaches the
// center), packet 2 is mirrored in the symmetric presets; asymmetric
// configurations override fields individually. The forward y-direction is a
// uniform drift `forward_speed`, so intensity and J_x depend on (x, t) only.
#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "dslit/errors.hpp"
#include "dslit/packets.hpp"
#include "dslit/quadrature.hpp"

namespace dslit {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Relative node floor: intensities below kNodeFloorRel times the
/// instantaneous peak bound count as dark-fringe singularities.
inline constexpr double kNodeFloorRel = 1e-12;

/// The experiment: two packets, shared scales, forward speed, and the
/// normalization N fixed at construction so the t = 0 intensity has unit mass.
struct DoubleSlitConfig {
  GaussianPacket packet1;
  GaussianPacket packet2;
  PhysicalScales scales;
  double forward_speed = 1.0;
  double normalization = 1.0;
};

namespace detail {

// Per-packet field values at one (t, x), shared by the interference ops.
struct ChannelEval {
  double density = 0.0;
  double amplitude = 0.0;  // sqrt(density)
  double convective = 0.0;
  double osmotic = 0.0;
  double phase = 0.0;  // action phase S_i
};

inline ChannelEval eval_channel(const GaussianPacket& p,
                                const PhysicalScales& scales, double t,
                                double x) {
  ChannelEval e;
  e.density = density(p, scales, t, x);
  e.amplitude = std::sqrt(e.density);
  e.convective = convective_velocity(p, scales, t, x);
  e.osmotic = osmotic_velocity(p, scales, t, x);
  e.phase = action_phase(p, scales, t, x);
  return e;
}

}  // namespace detail

/// Phase difference phi(x,t) = (S1 - S2)/hbar between the two channels.
inline double phase_difference(const DoubleSlitConfig& cfg, double t, double x) {
  const double s1 = action_phase(cfg.packet1, cfg.scales, t, x);
  const double s2 = action_phase(cfg.packet2, cfg.scales, t, x);
  return (s1 - s2) / cfg.scales.hbar;
}

/// Superposed intensity N^2 (P1 + P2 + 2 sqrt(P1 P2) cos phi), evaluated as
/// N^2 [(R1 - R2)^2 + 4 R1 R2 cos^2(phi/2)] so dark fringes stay >= 0 and
/// keep relative accuracy.
inline double total_intensity(const DoubleSlitConfig& cfg, double t, double x) {
  const auto c1 = detail::eval_channel(cfg.packet1, cfg.scales, t, x);
  const auto c2 = detail::eval_channel(cfg.packet2, cfg.scales, t, x);
  const double phi = (c1.phase - c2.phase) / cfg.scales.hbar;
  const double dr = c1.amplitude - c2.amplitude;
  const double ch = std::cos(0.5 * phi);
  const double n2 = cfg.normalization * cfg.normalization;
  return n2 * (dr * dr + 4.0 * c1.amplitude * c2.amplitude * ch * ch);
}

/// Upper bound on the instantaneous peak intensity,
/// N^2 (sqrt(P1max) + sqrt(P2max))^2 with P_imax the channel's density peak.
/// Used to anchor the relative node floor for point evaluations.
inline double intensity_peak_bound(const DoubleSlitConfig& cfg, double t) {
  const double p1 = cfg.packet1.weight * kInvSqrt2Pi / sigma_t(cfg.packet1, cfg.scales, t);
  const double p2 = cfg.packet2.weight * kInvSqrt2Pi / sigma_t(cfg.packet2, cfg.scales, t);
  const double s = std::sqrt(p1) + std::sqrt(p2);
  return cfg.normalization * cfg.normalization * s * s;
}

inline double node_floor(const DoubleSlitConfig& cfg, double t) {
  return kNodeFloorRel * intensity_peak_bound(cfg, t);
}

/// Total averaged current (J_x, J_y), scaled by N^2:
///   J = P1 v1 + P2 v2 + sqrt(P1 P2) (v1 + v2) cos phi
///                     + sqrt(P1 P2) (u2 - u1) sin phi
/// with v_i = (convective_i, forward_speed), u_i = (osmotic_i, 0). The sign
/// of the sin phi term is fixed by requiring identity with the complex-
/// amplitude current for the outward-positive osmotic convention.
inline Vec2 total_current(const DoubleSlitConfig& cfg, double t, double x) {
  const auto c1 = detail::eval_channel(cfg.packet1, cfg.scales, t, x);
  const auto c2 = detail::eval_channel(cfg.packet2, cfg.scales, t, x);
  const double phi = (c1.phase - c2.phase) / cfg.scales.hbar;
  const double cross = c1.amplitude * c2.amplitude;
  const double n2 = cfg.normalization * cfg.normalization;

  const double jx =
      n2 * (c1.density * c1.convective + c2.density * c2.convective +
            cross * ((c1.convective + c2.convective) * std::cos(phi) +
                     (c2.osmotic - c1.osmotic) * std::sin(phi)));

  const double ch = std::cos(0.5 * phi);
  const double dr = c1.amplitude - c2.amplitude;
  const double intensity = n2 * (dr * dr + 4.0 * cross * ch * ch);
  return {jx, intensity * cfg.forward_speed};
}

/// Flux-line velocity J / P_tot. Throws NodeSingularity when the intensity is
/// below the node floor (proximity to a dark fringe).
inline Vec2 total_velocity(const DoubleSlitConfig& cfg, double t, double x) {
  const double intensity = total_intensity(cfg, t, x);
  if (!(intensity > node_floor(cfg, t))) throw NodeSingularity(t, x);
  const Vec2 j = total_current(cfg, t, x);
  return {j.x / intensity, j.y / intensity};
}

/// Dark-node positions x_n = (n + 1/2) pi / k_x for n in [n_min, n_max].
inline std::vector<double> dark_nodes(double k_x, int n_min, int n_max) {
  if (k_x == 0.0) throw ZeroWavenumber();
  std::vector<double> nodes;
  for (int n = n_min; n <= n_max; ++n)
    nodes.push_back((n + 0.5) * std::numbers::pi / k_x);
  return nodes;
}

/// Transverse wavenumber k_x = m v_x / hbar of a drift velocity.
inline double wavenumber(const PhysicalScales& scales, double drift) {
  return scales.mass * drift / scales.hbar;
}

/// Normalization N making the quadrature of the t = 0 intensity equal one,
/// integrated adaptively over the union of the +-10 sigma0 envelopes.
inline double compute_normalization(const DoubleSlitConfig& cfg) {
  const auto& p1 = cfg.packet1;
  const auto& p2 = cfg.packet2;
  if (p1.weight == 0.0 && p2.weight == 0.0)
    throw DegenerateConfig("both packet weights are zero");
  const double lo = std::min(p1.center - 10.0 * p1.sigma0, p2.center - 10.0 * p2.sigma0);
  const double hi = std::max(p1.center + 10.0 * p1.sigma0, p2.center + 10.0 * p2.sigma0);
  DoubleSlitConfig unit = cfg;
  unit.normalization = 1.0;
  const double mass = integrate(
      [&](double x) { return total_intensity(unit, 0.0, x); }, lo, hi,
      QuadratureOptions{1e-13, 1e-13, 48}, 32);
  if (!(mass > 0.0))
    throw DegenerateConfig("t=0 intensity has no mass over the envelope window");
  return 1.0 / std::sqrt(mass);
}

/// Builds a validated, normalized configuration. Immutable afterwards.
inline DoubleSlitConfig make_config(const GaussianPacket& packet1,
                                    const GaussianPacket& packet2,
                                    const PhysicalScales& scales,
                                    double forward_speed) {
  scales.validate();
  packet1.validate();
  packet2.validate();
  if (!(forward_speed > 0.0) || !std::isfinite(forward_speed))
    throw ValidationError("forward_speed", "forward_speed must be finite and > 0");
  DoubleSlitConfig cfg{packet1, packet2, scales, forward_speed, 1.0};
  cfg.normalization = compute_normalization(cfg);
  return cfg;
}

}  // namespace dslit
