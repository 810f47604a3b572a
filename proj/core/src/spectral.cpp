#include "eigenshrink/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eigenshrink {

namespace {

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !(gamma <= 1.0)) {
    throw std::domain_error("gamma must lie in (0, 1], got " +
                            std::to_string(gamma));
  }
}

}  // namespace

BulkEdges bulk_edges(double gamma) {
  check_gamma(gamma);
  const double s = std::sqrt(gamma);
  return {(1.0 - s) * (1.0 - s), (1.0 + s) * (1.0 + s)};
}

double bulk_edge_upper(double gamma) { return bulk_edges(gamma).upper; }

double phase_transition(double gamma) {
  check_gamma(gamma);
  return 1.0 + std::sqrt(gamma);
}

double lambda_of_ell(double ell, double gamma, bool inclusive) {
  const double lp = phase_transition(gamma);
  const bool ok = inclusive ? ell >= lp : ell > lp;
  if (!ok) {
    throw std::domain_error("lambda_of_ell: ell=" + std::to_string(ell) +
                            " is not above the phase transition " +
                            std::to_string(lp));
  }
  return ell * (1.0 + gamma / (ell - 1.0));
}

double ell_of_lambda(double lambda, double gamma, bool inclusive) {
  const double edge = bulk_edge_upper(gamma);
  const bool ok = inclusive ? lambda >= edge : lambda > edge;
  if (!ok) {
    throw std::domain_error("ell_of_lambda: lambda=" + std::to_string(lambda) +
                            " is not above the bulk edge " +
                            std::to_string(edge));
  }
  const double t = lambda + 1.0 - gamma;
  const double disc = t * t - 4.0 * lambda;
  const double root = std::sqrt(disc > 0.0 ? disc : 0.0);
  return (t + root) / 2.0;
}

double cos2_of_ell(double ell, double gamma, bool inclusive) {
  const double lp = phase_transition(gamma);
  const bool ok = inclusive ? ell >= lp : ell > lp;
  if (!ok) {
    throw std::domain_error("cos2_of_ell: ell=" + std::to_string(ell) +
                            " is not above the phase transition " +
                            std::to_string(lp));
  }
  const double d = ell - 1.0;
  const double num = 1.0 - gamma / (d * d);
  return (num > 0.0 ? num : 0.0) / (1.0 + gamma / d);
}

}  // namespace eigenshrink
