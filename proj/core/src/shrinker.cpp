#include "eigenshrink/shrinker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "eigenshrink/errors.hpp"
#include "eigenshrink/loss_kernel.hpp"
#include "eigenshrink/mat2.hpp"
#include "eigenshrink/minimize.hpp"
#include "eigenshrink/spectral.hpp"

namespace eigenshrink {

namespace {

struct BlockGeometry {
  double ell, c2, s2, c, s;
};

BlockGeometry geometry(double ell, double gamma) {
  BlockGeometry g;
  g.ell = ell;
  g.c2 = cos2_of_ell(ell, gamma);
  g.s2 = 1.0 - g.c2;
  g.c = std::sqrt(g.c2);
  g.s = std::sqrt(g.s2);
  return g;
}

}  // namespace

bool has_closed_form(LossId loss) {
  if (loss.is_statistical()) {
    return loss.stat() != Statistical::affinity;
  }
  const int p = loss.pivot();
  if (p == 5 || p == 7) return false;
  if (loss.norm() == Norm::op && (p == 3 || p == 4)) return false;
  return true;
}

double shrink_closed_ell(double ell, double gamma, LossId loss) {
  if (!has_closed_form(loss)) {
    throw unsupported_method_error("no closed-form shrinker for " +
                                   loss.name());
  }
  const BlockGeometry g = geometry(ell, gamma);
  const double l = g.ell, c2 = g.c2, s2 = g.s2;
  if (loss.is_statistical()) {
    switch (loss.stat()) {
      case Statistical::stein: return l / (c2 + l * s2);
      case Statistical::entropy: return l * c2 + s2;
      case Statistical::divergence:
        return std::sqrt((l * l * c2 + l * s2) / (c2 + l * s2));
      case Statistical::frechet: {
        const double root = std::sqrt(l) * c2 + s2;
        return root * root;
      }
      case Statistical::affinity: break;  // unreachable
    }
  }
  const int pivot = loss.pivot();
  switch (loss.norm()) {
    case Norm::frobenius:
      switch (pivot) {
        case 1: return l * c2 + s2;
        case 2: return l / (c2 + l * s2);
        case 3: return (l * c2 + l * l * s2) / (c2 + l * l * s2);
        case 4: return (l * l * c2 + s2) / (l * c2 + s2);
        case 6: {
          const double denom = c2 + l * s2;
          return 1.0 + (l - 1.0) * c2 / (denom * denom);
        }
      }
      break;
    case Norm::op:
      switch (pivot) {
        case 1:
        case 2: return l;
        case 6: return 1.0 + (l - 1.0) / (c2 + l * s2);
      }
      break;
    case Norm::nuclear:
      switch (pivot) {
        case 1: return std::max(1.0 + (l - 1.0) * (1.0 - 2.0 * s2), 1.0);
        case 2: return std::max(l / (c2 + (2.0 * l - 1.0) * s2), 1.0);
        case 3: return std::max(l / (c2 + l * l * s2), 1.0);
        case 4: return std::max((l * l * c2 + s2) / l, 1.0);
        case 6: {
          const double denom = c2 + l * s2;
          const double d = l - 1.0;
          return std::max((l - d * d * c2 * s2) / (denom * denom), 1.0);
        }
      }
      break;
  }
  throw std::logic_error("unreachable closed-form dispatch");
}

double block_objective(LossId loss, double eta, double ell, double gamma) {
  const BlockGeometry g = geometry(ell, gamma);
  return eval_loss(loss, mat_A(ell), mat_B(eta, g.c, g.s));
}

double shrink_numeric_ell(double ell, double gamma, LossId loss) {
  const BlockGeometry g = geometry(ell, gamma);
  const SymMat2 a = mat_A(ell);
  const auto objective = [&](double eta) {
    return eval_loss(loss, a, mat_B(eta, g.c, g.s));
  };
  const double lambda = lambda_of_ell(ell, gamma);
  double hi = 10.0 * std::max(lambda, ell * ell);
  for (int attempt = 0;; ++attempt) {
    const MinimizeResult res = minimize_scalar(objective, 1.0, hi);
    if (res.x < hi * (1.0 - 1e-3)) return res.x;
    if (attempt >= 4) {
      throw numeric_error("shrink_numeric: minimum stuck at the search bound "
                          "after expansion, loss=" + loss.name());
    }
    hi *= 2.0;
  }
}

ShrinkerResult shrink(double lambda, double gamma, LossId loss,
                      ShrinkerMethod method) {
  if (!(lambda >= 0.0)) {
    throw std::domain_error("shrink: lambda must be >= 0");
  }
  if (method == ShrinkerMethod::closed_form && !has_closed_form(loss)) {
    throw unsupported_method_error("no closed-form shrinker for " +
                                   loss.name());
  }
  const double edge = bulk_edge_upper(gamma);
  if (lambda <= edge) {
    ShrinkerResult r;
    r.eta = 1.0;
    r.in_bulk = true;
    r.method_used = method == ShrinkerMethod::numeric
                        ? ShrinkerMethod::numeric
                        : ShrinkerMethod::closed_form;
    return r;
  }
  const double ell = ell_of_lambda(lambda, gamma);
  ShrinkerResult r;
  r.in_bulk = false;
  const bool use_closed =
      method == ShrinkerMethod::closed_form ||
      (method == ShrinkerMethod::automatic && has_closed_form(loss));
  if (use_closed) {
    r.eta = shrink_closed_ell(ell, gamma, loss);
    r.method_used = ShrinkerMethod::closed_form;
  } else {
    r.eta = shrink_numeric_ell(ell, gamma, loss);
    r.method_used = ShrinkerMethod::numeric;
  }
  return r;
}

double hard_threshold(double lambda, double gamma) {
  if (!(lambda >= 0.0)) {
    throw std::domain_error("hard_threshold: lambda must be >= 0");
  }
  return lambda > bulk_edge_upper(gamma) ? lambda : 1.0;
}

void SpikedModel::validate() const {
  bulk_edge_upper(gamma);  // gamma range check
  for (std::size_t i = 0; i < spikes.size(); ++i) {
    if (!(spikes[i] > 1.0)) {
      throw std::domain_error("SpikedModel: spikes must exceed 1");
    }
    if (i > 0 && !(spikes[i] < spikes[i - 1])) {
      throw std::domain_error("SpikedModel: spikes must be strictly "
                              "decreasing");
    }
  }
}

double asymptotic_loss(const SpikedModel& model, LossId loss,
                       const std::function<double(double)>& eta_of_lambda) {
  model.validate();
  const double lp = phase_transition(model.gamma);
  double sum = 0.0;
  double worst = 0.0;
  for (double ell : model.spikes) {
    if (!(ell > lp)) {
      throw std::domain_error(
          "asymptotic_loss: spike " + std::to_string(ell) +
          " is not above the phase transition " + std::to_string(lp));
    }
    const BlockGeometry g = geometry(ell, model.gamma);
    const double lambda = lambda_of_ell(ell, model.gamma);
    const double eta = eta_of_lambda(lambda);
    const double block =
        eval_loss(loss, mat_A(ell), mat_B(eta, g.c, g.s));
    sum += block;
    worst = std::max(worst, block);
  }
  return loss.max_decomposable() ? worst : sum;
}

double asymptotic_loss_optimal(const SpikedModel& model, LossId loss) {
  return asymptotic_loss(model, loss, [&](double lambda) {
    return shrink(lambda, model.gamma, loss).eta;
  });
}

namespace {

double affinity_slope_root(double gamma) {
  // b^{3/2} = (2/gamma)(1-b) has a unique root in (0,1): the left side
  // increases from 0, the right side decreases to 0.
  const auto f = [&](double b) {
    return std::pow(b, 1.5) - (2.0 / gamma) * (1.0 - b);
  };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2.0;
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  return (lo + hi) / 2.0;
}

double log_pivot_slope(double gamma) {
  const auto J = [&](double b) {
    const double t = 1.0 + b * (1.0 + gamma);
    const double disc = std::max(t * t - 4.0 * b, 0.0);
    const double root = std::sqrt(disc);
    const double lp = (t + root) / 2.0;
    const double lm = (t - root) / 2.0;
    const double a = std::log(lp), c = std::log(lm);
    return a * a + c * c;
  };
  MinimizeOptions opts;
  opts.log_grid = false;
  return minimize_scalar(J, 1e-9, 1.0 - 1e-9, opts).x;
}

constexpr double kLargeLambda = 1e6;

}  // namespace

Approx asy_slope(LossId loss, double gamma) {
  bulk_edge_upper(gamma);
  if (loss.is_statistical()) {
    switch (loss.stat()) {
      case Statistical::stein: return {1.0 / (1.0 + gamma), false};
      case Statistical::entropy: return {1.0, false};
      case Statistical::divergence:
        return {1.0 / std::sqrt(1.0 + gamma), false};
      case Statistical::affinity: return {affinity_slope_root(gamma), false};
      case Statistical::frechet: return {1.0, false};
    }
  }
  const int p = loss.pivot();
  switch (loss.norm()) {
    case Norm::frobenius:
      switch (p) {
        case 1: return {1.0, false};
        case 2: return {1.0 / (1.0 + gamma), false};
        case 3: return {0.0, false};
        case 4: return {1.0, false};
        case 6: return {1.0 / ((1.0 + gamma) * (1.0 + gamma)), false};
        case 7: return {log_pivot_slope(gamma), false};
      }
      break;
    case Norm::op:
      switch (p) {
        case 1:
        case 2: return {1.0, false};
        case 6: return {1.0 / (1.0 + gamma), false};
      }
      break;
    case Norm::nuclear:
      switch (p) {
        case 1: return {1.0, false};
        case 2: return {1.0 / (1.0 + 2.0 * gamma), false};
        case 3: return {0.0, false};
        case 4: return {1.0, false};
        case 6:
          return {(1.0 - gamma) / ((1.0 + gamma) * (1.0 + gamma)), false};
      }
      break;
  }
  // No analytic slope: evaluate the shrinker far out and flag the result.
  const double eta =
      shrink(kLargeLambda, gamma, loss, ShrinkerMethod::automatic).eta;
  return {eta / kLargeLambda, true};
}

double asy_slope_hat(LossId loss, double gamma, double at_lambda) {
  if (!(at_lambda > bulk_edge_upper(gamma))) {
    throw std::domain_error("asy_slope_hat: at_lambda must exceed the bulk "
                            "edge");
  }
  return shrink(at_lambda, gamma, loss).eta / at_lambda;
}

Approx asy_shift(LossId loss, double gamma, double at_lambda) {
  bulk_edge_upper(gamma);
  // The eight tabulated closed shifts.
  if (loss.is_statistical()) {
    if (loss.stat() == Statistical::entropy) return {-2.0 * gamma, false};
    if (loss.stat() == Statistical::frechet) return {-3.0 * gamma, false};
  } else {
    const int p = loss.pivot();
    const Norm n = loss.norm();
    if (p == 1 && n == Norm::frobenius) return {-2.0 * gamma, false};
    if (p == 1 && n == Norm::op) return {-gamma, false};
    if (p == 1 && n == Norm::nuclear) return {-3.0 * gamma, false};
    if (p == 2 && n == Norm::op) return {-gamma, false};
    if (p == 4 && n == Norm::frobenius) return {-gamma, false};
    if (p == 4 && n == Norm::nuclear) return {-2.0 * gamma, false};
  }
  // Unit-slope losses without a closed shift: numeric value at at_lambda.
  const bool unit_slope_numeric =
      loss.is_norm_pivot() &&
      ((loss.norm() == Norm::frobenius && loss.pivot() == 5) ||
       (loss.norm() == Norm::op &&
        (loss.pivot() == 4 || loss.pivot() == 5 || loss.pivot() == 7)));
  if (unit_slope_numeric) {
    if (!(at_lambda > bulk_edge_upper(gamma))) {
      throw std::domain_error("asy_shift: at_lambda must exceed the bulk "
                              "edge");
    }
    const double eta = shrink(at_lambda, gamma, loss).eta;
    return {eta - at_lambda, true};
  }
  throw shift_undefined_error("asymptotic shift undefined for " + loss.name() +
                              ": shrinker slope is not 1");
}

double ppi(LossId loss, double ell, double gamma) {
  if (!(ell > phase_transition(gamma))) {
    throw std::domain_error("ppi: ell must exceed the phase transition");
  }
  const double lambda = lambda_of_ell(ell, gamma);
  const double loss_hard = block_objective(loss, hard_threshold(lambda, gamma),
                                           ell, gamma);
  if (!(loss_hard > 0.0)) {
    throw numeric_error("ppi: hard-threshold loss vanished");
  }
  const double loss_opt =
      block_objective(loss, shrink(lambda, gamma, loss).eta, ell, gamma);
  return std::max(0.0, 100.0 * (loss_hard - loss_opt) / loss_hard);
}

std::vector<ShrinkPoint> tabulate(LossId loss, double gamma,
                                  std::span<const double> grid) {
  std::vector<ShrinkPoint> rows;
  rows.reserve(grid.size());
  for (double lambda : grid) {
    rows.push_back({lambda, shrink(lambda, gamma, loss)});
  }
  return rows;
}

}  // namespace eigenshrink
