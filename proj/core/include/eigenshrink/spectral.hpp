#pragma once

// Deterministic maps of the spiked covariance model: Marchenko-Pastur bulk
// edges, the BBP phase transition, the bijection between population spikes
// and displaced sample eigenvalues, and the sample/population eigenvector
// cosine. All maps are pure scalar functions of (value, gamma) with
// gamma = p/n in (0, 1].

namespace eigenshrink {

struct BulkEdges {
  double lower;
  double upper;
};

// (1 -/+ sqrt(gamma))^2. Throws std::domain_error for gamma outside (0,1].
BulkEdges bulk_edges(double gamma);
double bulk_edge_upper(double gamma);

// BBP transition 1 + sqrt(gamma): spikes at or below it do not separate
// from the bulk.
double phase_transition(double gamma);

// ell * (1 + gamma/(ell-1)), defined for ell > 1 + sqrt(gamma).
// With inclusive=true the boundary ell = 1 + sqrt(gamma) is admitted and
// maps to the bulk edge.
double lambda_of_ell(double ell, double gamma, bool inclusive = false);

// Inverse of lambda_of_ell, defined for lambda > (1 + sqrt(gamma))^2.
double ell_of_lambda(double lambda, double gamma, bool inclusive = false);

// Squared cosine between the sample and population eigenvectors of a spike:
// (1 - gamma/(ell-1)^2) / (1 + gamma/(ell-1)), in (0,1) above the transition.
double cos2_of_ell(double ell, double gamma, bool inclusive = false);

}  // namespace eigenshrink
