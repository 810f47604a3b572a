#pragma once

// Optimal eigenvalue shrinkers eta*(lambda; gamma, L) for the 26 losses:
// closed forms for the 17 that have them, otherwise 1-D minimization of the
// block objective F(eta, ell) = L2(A(ell), B(eta, c(ell), s(ell))). Also the
// bulk-edge hard threshold baseline, deterministic asymptotic losses,
// large-lambda slopes and shifts, and percent improvement over hard
// thresholding.

#include <functional>
#include <span>
#include <vector>

#include "eigenshrink/loss.hpp"

namespace eigenshrink {

enum class ShrinkerMethod { closed_form, numeric, automatic };

struct ShrinkerResult {
  double eta = 1.0;
  ShrinkerMethod method_used = ShrinkerMethod::closed_form;
  bool in_bulk = false;
};

// True for the 17 losses with an analytic shrinker.
bool has_closed_form(LossId loss);

// Analytic shrinker at a spike ell above the phase transition. Throws
// unsupported_method_error when the loss has no closed form.
double shrink_closed_ell(double ell, double gamma, LossId loss);

// argmin over eta >= 1 of the block objective, grid scan plus golden
// section. Valid for any of the 26 losses; ell must exceed the transition.
double shrink_numeric_ell(double ell, double gamma, LossId loss);

// The block objective F(eta, ell) itself (loss between A(ell) and
// B(eta, c(ell), s(ell))).
double block_objective(LossId loss, double eta, double ell, double gamma);

// Full shrinker: collapses the bulk (lambda <= bulk edge gives eta = 1),
// otherwise dispatches per `method`. `automatic` prefers the closed form.
ShrinkerResult shrink(double lambda, double gamma, LossId loss,
                      ShrinkerMethod method = ShrinkerMethod::automatic);

// eta#(lambda) = 1 + (lambda - 1) 1{lambda > (1+sqrt(gamma))^2}.
double hard_threshold(double lambda, double gamma);

struct SpikedModel {
  double gamma = 1.0;
  std::vector<double> spikes;  // strictly decreasing, each > 1

  void validate() const;  // throws std::domain_error on violation
};

// Deterministic asymptotic loss of the shrinker eta (a function of lambda)
// under the model: sum of per-spike block losses, or max for the operator
// family. Every spike must exceed the phase transition.
double asymptotic_loss(const SpikedModel& model, LossId loss,
                       const std::function<double(double)>& eta_of_lambda);
double asymptotic_loss_optimal(const SpikedModel& model, LossId loss);

struct Approx {
  double value = 0.0;
  bool approximate = false;  // numeric stand-in rather than analytic value
};

// lim eta*(lambda)/lambda. Closed form where known; the affinity slope is
// the root of b^{3/2} = (2/gamma)(1-b), the log-pivot Frobenius slope
// minimizes J(b; gamma) = sum_+- log^2(lambda_+-(b; gamma)); the rest are
// numeric evaluations at lambda = 1e6, flagged approximate.
Approx asy_slope(LossId loss, double gamma);

// Finite-lambda slope eta*(at_lambda)/at_lambda.
double asy_slope_hat(LossId loss, double gamma, double at_lambda = 100.0);

// lim eta*(lambda) - lambda, defined only for unit-slope shrinkers. Closed
// values where tabulated; unit-slope losses without one report the
// at_lambda value flagged approximate; others throw shift_undefined_error.
Approx asy_shift(LossId loss, double gamma, double at_lambda = 100.0);

// Percent improvement of eta* over the hard threshold in asymptotic loss at
// spike ell, in [0, 100].
double ppi(LossId loss, double ell, double gamma);

struct ShrinkPoint {
  double lambda;
  ShrinkerResult result;
};

std::vector<ShrinkPoint> tabulate(LossId loss, double gamma,
                                  std::span<const double> grid);

}  // namespace eigenshrink
