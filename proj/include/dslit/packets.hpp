// Closed-form kinematics of a single dispersing Gaussian packet: density,
// width evolution, osmotic and convective velocity fields, action phase,
// and the time-dependent (ballistic) diffusivity.
//
// All functions are pure; negative t is accepted everywhere (the dispersion
// law is even in t).
#pragma once

#include <cmath>

#include "dslit/errors.hpp"

namespace dslit {

inline constexpr double kInvSqrt2Pi = 0.3989422804014327;

/// Unit system: hbar and mass fix the diffusivity D = hbar / (2 mass).
struct PhysicalScales {
  double hbar = 1.0;
  double mass = 1.0;

  double diffusivity() const { return hbar / (2.0 * mass); }

  void validate() const {
    if (!(hbar > 0.0) || !std::isfinite(hbar))
      throw ValidationError("hbar", "hbar must be finite and > 0");
    if (!(mass > 0.0) || !std::isfinite(mass))
      throw ValidationError("mass", "mass must be finite and > 0");
  }
};

/// One slit channel: transverse center and drift at t = 0, initial r.m.s.
/// width, and a relative weight that multiplies the density (the amplitude
/// carries sqrt(weight)).
struct GaussianPacket {
  double center = 0.0;
  double drift = 0.0;
  double sigma0 = 1.0;
  double weight = 1.0;

  void validate() const {
    if (!std::isfinite(center))
      throw ValidationError("center", "center must be finite");
    if (!std::isfinite(drift))
      throw ValidationError("drift", "drift must be finite");
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0))
      throw ValidationError("sigma0", "sigma0 must be finite and > 0");
    if (!(weight >= 0.0) || !std::isfinite(weight))
      throw ValidationError("weight", "weight must be finite and >= 0");
  }

  /// Initial osmotic speed u0 = D / sigma0.
  double u0(const PhysicalScales& scales) const {
    return scales.diffusivity() / sigma0;
  }

  /// Moving center X + v_x t.
  double center_at(double t) const { return center + drift * t; }
};

/// Dispersion ratio sigma(t)/sigma0 = sqrt(1 + (D t / sigma0^2)^2).
inline double spreading_ratio(const GaussianPacket& packet,
                              const PhysicalScales& scales, double t) {
  const double q = scales.diffusivity() * t / (packet.sigma0 * packet.sigma0);
  return std::sqrt(1.0 + q * q);
}

/// Packet width sigma(t) = sigma0 * sqrt(1 + D^2 t^2 / sigma0^4).
inline double sigma_t(const GaussianPacket& packet, const PhysicalScales& scales,
                      double t) {
  return packet.sigma0 * spreading_ratio(packet, scales, t);
}

/// Time-dependent diffusivity D(t) = u0^2 t, so that
/// sigma^2(t) = sigma0^2 + D(t) t.
inline double ballistic_diffusivity(const GaussianPacket& packet,
                                    const PhysicalScales& scales, double t) {
  const double u0 = packet.u0(scales);
  return u0 * u0 * t;
}

/// Probability density of the channel,
/// weight * (2 pi sigma^2)^(-1/2) exp(-(x - X - v_x t)^2 / (2 sigma^2)).
inline double density(const GaussianPacket& packet, const PhysicalScales& scales,
                      double t, double x) {
  const double sigma = sigma_t(packet, scales, t);
  const double dx = x - packet.center_at(t);
  const double z = dx / sigma;
  return packet.weight * kInvSqrt2Pi / sigma * std::exp(-0.5 * z * z);
}

/// Osmotic velocity u(x,t) = D (x - X - v_x t) / sigma^2(t); equals
/// -(hbar/m) grad(R)/R for R = sqrt(density). Zero at the moving center,
/// oriented outward.
inline double osmotic_velocity(const GaussianPacket& packet,
                               const PhysicalScales& scales, double t, double x) {
  const double sigma = sigma_t(packet, scales, t);
  const double dx = x - packet.center_at(t);
  return scales.diffusivity() * dx / (sigma * sigma);
}

/// Dispersive stretching rate u0^2 t / sigma^2(t); equals sigma_dot/sigma.
inline double stretch_rate(const GaussianPacket& packet,
                           const PhysicalScales& scales, double t) {
  const double sigma = sigma_t(packet, scales, t);
  const double u0 = packet.u0(scales);
  return u0 * u0 * t / (sigma * sigma);
}

/// Convective velocity v(x,t) = v_x + (x - X - v_x t) * u0^2 t / sigma^2(t);
/// the gradient of the action phase divided by mass.
inline double convective_velocity(const GaussianPacket& packet,
                                  const PhysicalScales& scales, double t,
                                  double x) {
  const double dx = x - packet.center_at(t);
  return packet.drift + dx * stretch_rate(packet, scales, t);
}

/// Action phase S(x,t) = m v_x (x - X - v_x t/2)
///   + (m/2)(x - X - v_x t)^2 u0^2 t / sigma^2 - (hbar/2) arctan(u0 t / sigma0).
/// grad(S)/m reproduces convective_velocity; the arctan term is spatially
/// constant and cancels in phase differences of equal-width packets.
inline double action_phase(const GaussianPacket& packet,
                           const PhysicalScales& scales, double t, double x) {
  const double m = scales.mass;
  const double dx = x - packet.center_at(t);
  const double drift_term = m * packet.drift * (x - packet.center - 0.5 * packet.drift * t);
  const double dispersive_term = 0.5 * m * dx * dx * stretch_rate(packet, scales, t);
  const double q = scales.diffusivity() * t / (packet.sigma0 * packet.sigma0);
  const double gouy_term = -0.5 * scales.hbar * std::atan(q);
  return drift_term + dispersive_term + gouy_term;
}

}  // namespace dslit
