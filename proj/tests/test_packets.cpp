#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dslit/packets.hpp"
#include "test_support.hpp"

using namespace dslit;
namespace ts = test_support;

namespace {
const PhysicalScales kUnit{1.0, 1.0};  // D = 0.5
}

TEST(PhysicalScales, DiffusivityIsHbarOver2m) {
  EXPECT_DOUBLE_EQ(kUnit.diffusivity(), 0.5);
  const PhysicalScales scaled{3.0, 4.0};
  EXPECT_DOUBLE_EQ(scaled.diffusivity(), 3.0 / 8.0);
  EXPECT_THROW(PhysicalScales({0.0, 1.0}).validate(), ValidationError);
  EXPECT_THROW(PhysicalScales({1.0, -2.0}).validate(), ValidationError);
}

TEST(Packet, InvariantValidation) {
  EXPECT_NO_THROW(GaussianPacket({1.0, -0.5, 2.0, 0.0}).validate());
  EXPECT_THROW(GaussianPacket({0.0, 0.0, 0.0, 1.0}).validate(), ValidationError);
  EXPECT_THROW(GaussianPacket({0.0, 0.0, 1.0, -1.0}).validate(), ValidationError);
  try {
    GaussianPacket({0.0, 0.0, -1.0, 1.0}).validate();
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field, "sigma0");
  }
}

TEST(SigmaT, KnownValues) {
  GaussianPacket p{0.0, 0.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(sigma_t(p, kUnit, 0.0), 1.0);
  // D t = sigma0^2 doubles the variance
  EXPECT_NEAR(sigma_t(p, kUnit, 2.0), std::sqrt(2.0), 1e-15);
  p.sigma0 = 0.5;
  EXPECT_NEAR(sigma_t(p, kUnit, 1.0), 0.5 * std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(sigma_t(p, kUnit, 1.0), 1.118033988749895, 1e-12);
}

TEST(SigmaT, EvenInT) {
  auto gen = ts::rng(11);
  const GaussianPacket p{1.0, 0.3, 0.7, 1.0};
  for (int i = 0; i < 200; ++i) {
    const double t = ts::uniform(gen, 0.0, 30.0);
    EXPECT_EQ(sigma_t(p, kUnit, t), sigma_t(p, kUnit, -t));
  }
}

TEST(BallisticDiffusivity, ZeroAtStartAndLinearInT) {
  GaussianPacket p{0.0, 0.0, 1.0, 1.0};
  EXPECT_EQ(ballistic_diffusivity(p, kUnit, 0.0), 0.0);
  EXPECT_NEAR(ballistic_diffusivity(p, kUnit, 2.0), 0.5, 1e-15);
  const double s2 = sigma_t(p, kUnit, 2.0) * sigma_t(p, kUnit, 2.0);
  EXPECT_NEAR(s2, 1.0 + ballistic_diffusivity(p, kUnit, 2.0) * 2.0, 1e-14);

  p.sigma0 = 0.5;
  EXPECT_NEAR(ballistic_diffusivity(p, kUnit, 1.0), 1.0, 1e-15);
  const double s2b = sigma_t(p, kUnit, 1.0) * sigma_t(p, kUnit, 1.0);
  EXPECT_NEAR(s2b, 0.25 + 1.0, 1e-14);
}

// sigma^2(t) - sigma0^2 = u0^2 t^2 holds to rounding for random (sigma0, t).
TEST(Dispersion, ExactVarianceIdentity) {
  auto gen = ts::rng(12);
  for (int i = 0; i < 1000; ++i) {
    const double sigma0 = std::exp(ts::uniform(gen, std::log(0.1), std::log(10.0)));
    const double t = ts::uniform(gen, -50.0, 50.0);
    const GaussianPacket p{0.0, 0.0, sigma0, 1.0};
    const double sigma = sigma_t(p, kUnit, t);
    const double lhs = sigma * sigma - sigma0 * sigma0;
    const double u0 = p.u0(kUnit);
    const double rhs = u0 * u0 * t * t;
    EXPECT_NEAR(lhs, rhs, 2e-14 * std::max(sigma * sigma, sigma0 * sigma0))
        << "sigma0=" << sigma0 << " t=" << t;
  }
}

// u0^2 t / sigma^2 equals sigma_dot/sigma with sigma_dot taken by central
// difference.
TEST(Dispersion, StretchRateMatchesSigmaDot) {
  auto gen = ts::rng(13);
  const GaussianPacket p{0.0, 0.0, 1.3, 1.0};
  for (int i = 0; i < 100; ++i) {
    const double t = ts::uniform(gen, 0.2, 20.0);
    const double fd = ts::central_diff(
        [&](double tau) { return sigma_t(p, kUnit, tau); }, t, 1e-5);
    const double expected = fd / sigma_t(p, kUnit, t);
    const double got = stretch_rate(p, kUnit, t);
    EXPECT_NEAR(got, expected, 1e-6 * std::abs(expected));
  }
}

TEST(Density, PeakAndSymmetry) {
  const GaussianPacket p{2.0, -0.5, 1.5, 0.7};
  const double t = 3.0;
  const double center = p.center_at(t);
  const double sigma = sigma_t(p, kUnit, t);
  EXPECT_NEAR(density(p, kUnit, t, center),
              p.weight / std::sqrt(2.0 * std::numbers::pi * sigma * sigma), 1e-15);
  auto gen = ts::rng(14);
  for (int i = 0; i < 100; ++i) {
    const double d = ts::uniform(gen, 0.0, 5.0);
    const double above = density(p, kUnit, t, center + d);
    const double below = density(p, kUnit, t, center - d);
    EXPECT_NEAR(above, below, 1e-13 * above);
  }
}

TEST(Density, QuadratureRecoversWeight) {
  const GaussianPacket p{1.0, 0.25, 0.8, 0.6};
  for (double t : {0.0, 1.5, 7.0}) {
    const double sigma = sigma_t(p, kUnit, t);
    const double c = p.center_at(t);
    const double mass = ts::romberg(
        [&](double x) { return density(p, kUnit, t, x); }, c - 10.0 * sigma,
        c + 10.0 * sigma);
    EXPECT_NEAR(mass, p.weight, 1e-10);
  }
}

TEST(Density, MirrorInvariance) {
  // density is invariant under (x, v_x, X) -> (-x, -v_x, -X)
  const GaussianPacket p{1.7, 0.4, 1.1, 1.0};
  const GaussianPacket m{-1.7, -0.4, 1.1, 1.0};
  auto gen = ts::rng(15);
  for (int i = 0; i < 100; ++i) {
    const double x = ts::uniform(gen, -6.0, 6.0);
    const double t = ts::uniform(gen, 0.0, 10.0);
    EXPECT_EQ(density(p, kUnit, t, x), density(m, kUnit, t, -x));
  }
}

// The undrifted density solves dP/dt = D(t) d2P/dx2 with D(t) = u0^2 t;
// the finite-difference residual drops at second order as h halves.
TEST(Density, AnomalousDiffusionResidualConverges) {
  const GaussianPacket p{2.0, 0.0, 1.0, 1.0};
  const double steps[3] = {0.16, 0.08, 0.04};
  double max_res[3] = {0.0, 0.0, 0.0};
  for (int level = 0; level < 3; ++level) {
    const double h = steps[level];
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
      for (double dx : {-2.0, -1.0, -0.3, 0.6, 1.4}) {
        const double x = p.center + dx * sigma_t(p, kUnit, t);
        const double dpdt = ts::central_diff(
            [&](double tau) { return density(p, kUnit, tau, x); }, t, h);
        const double d2pdx2 = ts::second_diff(
            [&](double xi) { return density(p, kUnit, t, xi); }, x, h);
        const double res = dpdt - ballistic_diffusivity(p, kUnit, t) * d2pdx2;
        max_res[level] = std::max(max_res[level], std::abs(res));
      }
    }
  }
  EXPECT_NEAR(max_res[0] / max_res[1], 4.0, 0.5);
  EXPECT_NEAR(max_res[1] / max_res[2], 4.0, 0.5);
}

// With drift the same law holds in advective form:
// dP/dt + v dP/dx = D(t) d2P/dx2.
TEST(Density, AdvectiveDiffusionForm) {
  const GaussianPacket p{-1.0, 0.7, 1.2, 1.0};
  const double h = 1e-3;
  for (double t : {0.8, 3.0}) {
    for (double x : {-2.0, 0.5, 2.5}) {
      const double dpdt = ts::central_diff(
          [&](double tau) { return density(p, kUnit, tau, x); }, t, h);
      const double dpdx = ts::central_diff(
          [&](double xi) { return density(p, kUnit, t, xi); }, x, h);
      const double d2pdx2 = ts::second_diff(
          [&](double xi) { return density(p, kUnit, t, xi); }, x, h);
      const double res =
          dpdt + p.drift * dpdx - ballistic_diffusivity(p, kUnit, t) * d2pdx2;
      EXPECT_NEAR(res, 0.0, 1e-5);
    }
  }
}

TEST(OsmoticVelocity, CenterZeroKnownValueAndSign) {
  const GaussianPacket p{0.0, 0.0, 1.0, 1.0};
  EXPECT_EQ(osmotic_velocity(p, kUnit, 0.4, p.center_at(0.4)), 0.0);
  // D = 0.5, sigma = 1 at t = 0, offset 1
  EXPECT_NEAR(osmotic_velocity(p, kUnit, 0.0, 1.0), 0.5, 1e-15);
  auto gen = ts::rng(16);
  for (int i = 0; i < 100; ++i) {
    const double x = ts::uniform(gen, -8.0, 8.0);
    const double t = ts::uniform(gen, 0.0, 10.0);
    if (x == p.center_at(t)) continue;
    EXPECT_EQ(osmotic_velocity(p, kUnit, t, x) > 0.0, x > p.center_at(t));
  }
}

// u = -(hbar/m) grad(R)/R with R = sqrt(density), by finite differences at
// random (x, t).
TEST(OsmoticVelocity, MatchesAmplitudeLogGradient) {
  const GaussianPacket p{1.5, -0.3, 0.9, 0.8};
  auto gen = ts::rng(17);
  for (int i = 0; i < 100; ++i) {
    const double t = ts::uniform(gen, 0.0, 8.0);
    const double sigma = sigma_t(p, kUnit, t);
    const double offset =
        (i % 2 == 0 ? 1.0 : -1.0) * ts::uniform(gen, 0.3, 4.0) * sigma;
    const double x = p.center_at(t) + offset;
    const auto amplitude = [&](double xi) {
      return std::sqrt(density(p, kUnit, t, xi));
    };
    const double grad = ts::central_diff(amplitude, x, 1e-5);
    const double expected = -(kUnit.hbar / kUnit.mass) * grad / amplitude(x);
    EXPECT_NEAR(osmotic_velocity(p, kUnit, t, x), expected,
                1e-6 * std::abs(expected));
  }
}

TEST(ConvectiveVelocity, DriftLimits) {
  const GaussianPacket p{2.0, -0.6, 1.0, 1.0};
  auto gen = ts::rng(18);
  for (int i = 0; i < 50; ++i) {
    // t = 0: no dispersion yet, velocity is the drift everywhere
    EXPECT_EQ(convective_velocity(p, kUnit, 0.0, ts::uniform(gen, -9.0, 9.0)),
              p.drift);
    // the moving center follows the drift at any t
    const double t = ts::uniform(gen, 0.0, 15.0);
    EXPECT_EQ(convective_velocity(p, kUnit, t, p.center_at(t)), p.drift);
  }
}

TEST(ConvectiveVelocity, KnownValue) {
  // sigma0=1, hbar=m=1, v_x=0, X=0, t=2, x=3: sigma^2=2, u0^2 t=0.5 -> 0.75
  const GaussianPacket p{0.0, 0.0, 1.0, 1.0};
  EXPECT_NEAR(convective_velocity(p, kUnit, 2.0, 3.0), 0.75, 1e-15);
}

// grad(action_phase)/m reproduces the convective velocity.
TEST(ConvectiveVelocity, MatchesPhaseGradient) {
  const GaussianPacket p{-0.5, 0.35, 1.4, 1.0};
  auto gen = ts::rng(19);
  for (int i = 0; i < 100; ++i) {
    const double t = ts::uniform(gen, 0.0, 12.0);
    const double x = ts::uniform(gen, -7.0, 7.0);
    const double fd = ts::central_diff(
        [&](double xi) { return action_phase(p, kUnit, t, xi); }, x, 1e-5);
    const double expected = fd / kUnit.mass;
    const double got = convective_velocity(p, kUnit, t, x);
    EXPECT_NEAR(got, expected, 1e-6 * std::max(std::abs(expected), 1e-3));
  }
}

TEST(ActionPhase, OriginAndGradient) {
  const GaussianPacket p{0.0, 0.0, 1.0, 1.0};
  EXPECT_EQ(action_phase(p, kUnit, 0.0, 0.0), 0.0);
  GaussianPacket drifting{3.0, 0.8, 1.0, 1.0};
  EXPECT_EQ(action_phase(drifting, kUnit, 0.0, drifting.center), 0.0);
  // central difference of S / m at the documented point
  const double fd = ts::central_diff(
      [&](double xi) { return action_phase(p, kUnit, 2.0, xi); }, 3.0, 1e-5);
  EXPECT_NEAR(fd / kUnit.mass, 0.75, 1e-6 * 0.75);
}

TEST(ActionPhase, GouyTermCancelsForEqualWidths) {
  // equal sigma0 -> the arctan terms subtract to zero in S1 - S2
  const GaussianPacket p1{2.0, -0.4, 1.1, 1.0};
  const GaussianPacket p2{-2.0, 0.4, 1.1, 1.0};
  const double t = 5.0;
  const double x = 0.7;
  const double with_gouy =
      action_phase(p1, kUnit, t, x) - action_phase(p2, kUnit, t, x);
  // rebuild both phases without the spatially constant term
  const auto gouy_free = [&](const GaussianPacket& p) {
    const double dx = x - p.center_at(t);
    return kUnit.mass * p.drift * (x - p.center - 0.5 * p.drift * t) +
           0.5 * kUnit.mass * dx * dx * stretch_rate(p, kUnit, t);
  };
  EXPECT_DOUBLE_EQ(with_gouy, gouy_free(p1) - gouy_free(p2));
}
