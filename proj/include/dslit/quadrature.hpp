// Adaptive Simpson quadrature for smooth 1-D integrands.
#pragma once

#include <cmath>
#include <cstddef>

namespace dslit {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_depth = 48;
};

namespace detail {

template <typename F>
double simpson_segment(const F& f, double a, double fa, double b, double fb,
                       double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson_rec(const F& f, double a, double fa, double b, double fb,
                            double m, double fm, double whole, double tol,
                            int depth, int max_depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_segment(f, a, fa, m, fm, lm, flm);
  const double right = simpson_segment(f, m, fm, b, fb, rm, frm);
  const double delta = left + right - whole;
  if (depth >= max_depth || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                              depth + 1, max_depth) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                              depth + 1, max_depth);
}

}  // namespace detail

/// Integrates f over [a, b]. The interval is pre-split into `splits` panels so
/// well-separated features (two slit envelopes) are all seen by the recursion.
template <typename F>
double integrate(const F& f, double a, double b,
                 const QuadratureOptions& opts = {}, int splits = 16) {
  if (a == b) return 0.0;
  double total = 0.0;
  const double width = (b - a) / splits;
  for (int i = 0; i < splits; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == splits) ? b : a + (i + 1) * width;
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo);
    const double fhi = f(hi);
    const double fmid = f(mid);
    const double whole = detail::simpson_segment(f, lo, flo, hi, fhi, mid, fmid);
    const double tol =
        std::max(opts.abs_tol / splits, opts.rel_tol * std::abs(whole));
    total += detail::adaptive_simpson_rec(f, lo, flo, hi, fhi, mid, fmid, whole,
                                          tol, 0, opts.max_depth);
  }
  return total;
}

}  // namespace dslit
