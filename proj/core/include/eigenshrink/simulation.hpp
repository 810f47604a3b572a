#pragma once

// Monte Carlo validation of the asymptotic theory at desk scale: spiked
// Gaussian samples, sample covariances, eigenvalue/eigenvector limits,
// deterministic asymptotic losses, equivariant oracle baselines, and the
// simultaneous block-diagonalization residual.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "eigenshrink/loss.hpp"
#include "eigenshrink/shrinker.hpp"

namespace eigenshrink {

enum class ShrinkerKind { optimal, hard_threshold, custom };

// Piecewise-linear shrinker from a (lambda, eta) table, clamped to the end
// values outside the table range. Used for custom shrinkers loaded from CSV.
class TableShrinker {
 public:
  TableShrinker() = default;
  TableShrinker(std::vector<double> lambdas, std::vector<double> etas);
  double operator()(double lambda) const;
  bool empty() const { return lambdas_.empty(); }

 private:
  std::vector<double> lambdas_;
  std::vector<double> etas_;
};

struct SimConfig {
  int n = 2000;
  int p = 1000;
  std::vector<double> spikes;  // strictly decreasing, each > 1
  std::uint64_t seed = 42;
  int replications = 20;
  std::vector<LossId> losses;
  ShrinkerKind shrinker = ShrinkerKind::optimal;
  TableShrinker custom;
  bool allow_large = false;  // lifts the p <= 2000 desk-scale ceiling
  int threads = 0;           // 0: EIGENSHRINK_THREADS or hardware

  double gamma() const { return static_cast<double>(p) / n; }
  void validate() const;  // std::domain_error / numeric_error (capacity)
};

struct SimReplicate {
  std::vector<double> top_eigenvalues;         // descending, r entries
  Eigen::MatrixXd cosines;                     // r x r, |<e_j, v_i>|
  std::map<LossId, double> losses;
  double oracle_frobenius = 0.0;
  double oracle_stein = 0.0;
};

struct MetricSummary {
  double mean = 0.0;
  double se = 0.0;         // standard error of the mean
  double predicted = 0.0;  // deterministic asymptotic prediction
  double rel_dev = 0.0;    // (mean - predicted) / predicted when defined
};

struct SimSummary {
  SimConfig config;
  std::vector<MetricSummary> top_eigenvalues;  // per spike
  std::vector<MetricSummary> cos2;             // squared diagonal cosines
  std::map<LossId, MetricSummary> losses;
  MetricSummary oracle_frobenius;              // predictions: L_inf(eta*)
  MetricSummary oracle_stein;
  std::vector<SimReplicate> replicates;        // ordered by index
};

// S = (1/n) X X' with X columns i.i.d. N(0, diag(spikes, 1...)).
// Deterministic given (config.seed, replicate_index).
Eigen::MatrixXd sample_covariance(const SimConfig& config,
                                  int replicate_index);

struct SpikeStats {
  std::vector<double> eigenvalues;  // top r, descending
  Eigen::MatrixXd cosines;          // r x r, entry (i, j) = |v_i(j)|
};

SpikeStats empirical_spike_stats(const Eigen::MatrixXd& s, int r);

// V eta(Lambda) V' with eta the optimal shrinker for `loss`.
Eigen::MatrixXd apply_shrinker(const Eigen::MatrixXd& s, double gamma,
                               LossId loss);

enum class OracleKind { frobenius, stein };

// Loss of the best equivariant estimator sharing S's eigenvectors, computed
// against the diagonal spiked population with the given spikes.
double oracle_loss(const Eigen::MatrixXd& s, const std::vector<double>& spikes,
                   OracleKind kind);

// || W' Sigma_hat W - (plus_i B(eta_i, c_i, s_i)) + I ||_F with W built by
// Gram-Schmidt over (e_1..e_r, v_1..v_r) and the interleaving permutation;
// eta_i and c_i are the empirical values. Throws numeric_error on a
// Gram-Schmidt degeneracy (|<u, v>| ~ 1).
double block_diag_residual(const Eigen::MatrixXd& s,
                           const std::vector<double>& spikes, double gamma,
                           const std::function<double(double)>& eta, int r);

SimSummary run_study(const SimConfig& config);

// Exact evaluation of eval_loss(loss, diag(a), I + Vk (eta - 1) Vk') through
// the pair's joint invariant subspace. Equals the dense route to roundoff;
// the study uses it so the 26-loss sweep stays at O(p^2) per replicate.
double eval_loss_spiked(LossId loss, const Eigen::VectorXd& diag,
                        const Eigen::MatrixXd& vk, const Eigen::VectorXd& eta);

}  // namespace eigenshrink
