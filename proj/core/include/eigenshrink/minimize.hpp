#pragma once

#include <functional>

namespace eigenshrink {

struct MinimizeOptions {
  int grid_points = 256;
  bool log_grid = true;
  double rel_tol = 1e-12;
};

struct MinimizeResult {
  double x;
  double value;
};

// Coarse grid scan over [lo, hi] followed by golden-section refinement of
// the bracketing interval. The scan guards against non-unimodal objectives
// (nuclear-family kinks); golden section then needs no derivatives. Ties on
// a flat stretch resolve toward the smaller abscissa.
MinimizeResult minimize_scalar(const std::function<double(double)>& fn,
                               double lo, double hi,
                               const MinimizeOptions& opts = {});

}  // namespace eigenshrink
