// Test-side oracles: Romberg quadrature (independent of the library's
// adaptive Simpson), finite-difference helpers, and seeded sampling.
#pragma once

#include <cmath>
#include <random>
#include <vector>

namespace test_support {

// Romberg integration over [a, b]; `levels` = 14 gives 8192 trapezoid panels
// plus extrapolation, ample for smooth envelopes and resolved fringes.
template <typename F>
double romberg(const F& f, double a, double b, int levels = 14) {
  std::vector<std::vector<double>> table(levels, std::vector<double>(levels, 0.0));
  double h = b - a;
  table[0][0] = 0.5 * h * (f(a) + f(b));
  for (int i = 1; i < levels; ++i) {
    h *= 0.5;
    double sum = 0.0;
    const long n = 1L << (i - 1);
    for (long k = 0; k < n; ++k) sum += f(a + (2 * k + 1) * h);
    table[i][0] = 0.5 * table[i - 1][0] + h * sum;
    double factor = 4.0;
    for (int j = 1; j <= i; ++j) {
      table[i][j] =
          table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
      factor *= 4.0;
    }
  }
  return table[levels - 1][levels - 1];
}

template <typename F>
double central_diff(const F& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <typename F>
double second_diff(const F& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

}  // namespace test_support
