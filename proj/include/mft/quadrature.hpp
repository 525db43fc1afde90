#pragma once

#include <cmath>

namespace mft {

namespace detail {

template <class F>
double simpson_recurse(F& f, double a, double m, double b, double fa,
                       double fm, double fb, double whole, double rel_tol,
                       double abs_tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double h = b - a;
  const double left = h / 12.0 * (fa + 4.0 * flm + fm);
  const double right = h / 12.0 * (fm + 4.0 * frm + fb);
  const double err = (left + right - whole) / 15.0;
  if (depth <= 0 ||
      std::abs(err) <= std::fmax(abs_tol, rel_tol * std::abs(left + right))) {
    return left + right + err;
  }
  return simpson_recurse(f, a, lm, m, fa, flm, fm, left, rel_tol,
                         0.5 * abs_tol, depth - 1) +
         simpson_recurse(f, m, rm, b, fm, frm, fb, right, rel_tol,
                         0.5 * abs_tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature with Richardson error control. The integrand
// must be finite on [a, b]; endpoint singularities have to be removed by a
// change of variable before calling.
template <class F>
double integrate_adaptive_simpson(F&& f, double a, double b,
                                  double rel_tol = 1e-10,
                                  double abs_tol = 1e-14,
                                  int max_depth = 60) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(f, a, m, b, fa, fm, fb, whole, rel_tol,
                                 abs_tol, max_depth);
}

}  // namespace mft
