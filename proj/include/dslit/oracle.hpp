// Independent complex-amplitude route to intensity, current, and velocity.
// Shares packet parameters with the classical engine but no field code paths;
// spatial derivatives are closed-form so the only error source is rounding.
#pragma once

#include <cmath>
#include <complex>

#include "dslit/interference.hpp"
#include "dslit/packets.hpp"

namespace dslit {

using ComplexAmplitude = std::complex<double>;

/// Freely evolving Gaussian amplitude with initial width sigma0, center X,
/// drift v_x, scaled by sqrt(weight). |Psi|^2 reproduces density(); arg(Psi)
/// reproduces action_phase()/hbar.
inline ComplexAmplitude packet_wavefunction(const GaussianPacket& packet,
                                            const PhysicalScales& scales,
                                            double t, double x) {
  const double s0sq = packet.sigma0 * packet.sigma0;
  const double q = scales.diffusivity() * t / s0sq;  // dispersion parameter
  const double dx = x - packet.center_at(t);
  const std::complex<double> spread(1.0, q);
  const std::complex<double> gauss_arg =
      -dx * dx * std::complex<double>(1.0, -q) / (4.0 * s0sq * (1.0 + q * q));
  const double plane_phase =
      scales.mass * packet.drift * (x - packet.center - 0.5 * packet.drift * t) /
      scales.hbar;
  const double norm = std::sqrt(packet.weight) *
                      std::pow(2.0 * std::numbers::pi * s0sq, -0.25);
  return norm / std::sqrt(spread) *
         std::exp(gauss_arg + std::complex<double>(0.0, plane_phase));
}

/// Closed-form logarithmic derivative (d Psi / dx) / Psi.
inline ComplexAmplitude packet_log_derivative(const GaussianPacket& packet,
                                              const PhysicalScales& scales,
                                              double t, double x) {
  const double s0sq = packet.sigma0 * packet.sigma0;
  const double q = scales.diffusivity() * t / s0sq;
  const double sigma_sq = s0sq * (1.0 + q * q);
  const double dx = x - packet.center_at(t);
  return std::complex<double>(-dx / (2.0 * sigma_sq), dx * q / (2.0 * sigma_sq)) +
         std::complex<double>(0.0, scales.mass * packet.drift / scales.hbar);
}

/// Psi_tot = N (Psi_1 + Psi_2).
inline ComplexAmplitude superposed_wavefunction(const DoubleSlitConfig& cfg,
                                                double t, double x) {
  return cfg.normalization *
         (packet_wavefunction(cfg.packet1, cfg.scales, t, x) +
          packet_wavefunction(cfg.packet2, cfg.scales, t, x));
}

/// Spatial derivative of the superposed amplitude, assembled from the
/// closed-form per-packet derivatives (no numeric differentiation).
inline ComplexAmplitude superposed_derivative(const DoubleSlitConfig& cfg,
                                              double t, double x) {
  const auto psi1 = packet_wavefunction(cfg.packet1, cfg.scales, t, x);
  const auto psi2 = packet_wavefunction(cfg.packet2, cfg.scales, t, x);
  return cfg.normalization *
         (psi1 * packet_log_derivative(cfg.packet1, cfg.scales, t, x) +
          psi2 * packet_log_derivative(cfg.packet2, cfg.scales, t, x));
}

/// Quantum probability current:
/// J_x = (hbar/m) Im{Psi* dPsi/dx}, J_y = |Psi_tot|^2 forward_speed.
inline Vec2 quantum_current(const DoubleSlitConfig& cfg, double t, double x) {
  const auto psi = superposed_wavefunction(cfg, t, x);
  const auto dpsi = superposed_derivative(cfg, t, x);
  const double jx =
      cfg.scales.hbar / cfg.scales.mass * std::imag(std::conj(psi) * dpsi);
  return {jx, std::norm(psi) * cfg.forward_speed};
}

/// Complex-velocity form -(i hbar / 2m)[grad Psi / Psi - grad Psi* / Psi*]
/// evaluated as the real x-velocity, plus the forward drift in y. Equals
/// quantum_current / |Psi_tot|^2. Throws NodeSingularity below the node floor.
inline Vec2 quantum_velocity(const DoubleSlitConfig& cfg, double t, double x) {
  const auto psi = superposed_wavefunction(cfg, t, x);
  if (!(std::norm(psi) > node_floor(cfg, t))) throw NodeSingularity(t, x);
  const auto dpsi = superposed_derivative(cfg, t, x);
  const double vx =
      cfg.scales.hbar / cfg.scales.mass * std::imag(dpsi / psi);
  return {vx, cfg.forward_speed};
}

}  // namespace dslit
