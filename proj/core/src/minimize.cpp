#include "eigenshrink/minimize.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace eigenshrink {

MinimizeResult minimize_scalar(const std::function<double(double)>& fn,
                               double lo, double hi,
                               const MinimizeOptions& opts) {
  if (!(hi > lo)) throw std::invalid_argument("minimize_scalar: empty range");
  const int n = opts.grid_points;
  std::vector<double> xs(n);
  if (opts.log_grid && lo > 0.0) {
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) {
      xs[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    }
    xs[0] = lo;
    xs[n - 1] = hi;
  } else {
    for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / (n - 1);
  }

  int best = 0;
  double fbest = fn(xs[0]);
  for (int i = 1; i < n; ++i) {
    const double f = fn(xs[i]);
    if (f < fbest) {
      fbest = f;
      best = i;
    }
  }

  double a = xs[best > 0 ? best - 1 : 0];
  double b = xs[best < n - 1 ? best + 1 : n - 1];
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = fn(x1);
  double f2 = fn(x2);
  while (b - a > opts.rel_tol * std::max(1.0, std::abs(a))) {
    if (f1 <= f2) {  // prefer the left branch: ties resolve to smaller x
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = fn(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = fn(x2);
    }
  }
  const double xm = (a + b) / 2.0;
  const double fm = fn(xm);
  if (fm <= fbest) return {xm, fm};
  return {xs[best], fbest};
}

}  // namespace eigenshrink
