#pragma once

#include <cmath>
#include <stdexcept>

namespace mft {

struct RootResult {
  double x;
  int iterations;
  bool converged;
};

// Bracketed bisection driven down to rel_width of the initial bracket,
// followed by a few Newton polish steps clamped to the bracket. Bisection
// guarantees convergence; Newton sharpens the last digits.
template <class F, class DF>
RootResult find_root(F&& f, DF&& df, double lo, double hi,
                     double rel_width = 1e-14, int newton_steps = 3) {
  if (!(lo < hi)) throw std::invalid_argument("find_root: empty bracket");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0, true};
  if (fhi == 0.0) return {hi, 0, true};
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("find_root: root not bracketed");

  const double lo0 = lo;
  const double hi0 = hi;
  const double width0 = hi - lo;
  int it = 0;
  while (hi - lo > rel_width * width0 && it < 300) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at machine resolution
    const double fmid = f(mid);
    ++it;
    if (fmid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }

  double x = 0.5 * (lo + hi);
  for (int i = 0; i < newton_steps; ++i) {
    const double d = df(x);
    if (d == 0.0 || !std::isfinite(d)) break;
    double next = x - f(x) / d;
    if (!(next >= lo0 && next <= hi0)) break;
    x = next;
  }
  return {x, it, true};
}

}  // namespace mft
