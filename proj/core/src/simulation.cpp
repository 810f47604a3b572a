#include "eigenshrink/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "eigenshrink/errors.hpp"
#include "eigenshrink/loss_kernel.hpp"
#include "eigenshrink/rng.hpp"
#include "eigenshrink/spectral.hpp"

namespace eigenshrink {

using Eigen::MatrixXd;
using Eigen::VectorXd;

TableShrinker::TableShrinker(std::vector<double> lambdas,
                             std::vector<double> etas)
    : lambdas_(std::move(lambdas)), etas_(std::move(etas)) {
  if (lambdas_.size() != etas_.size() || lambdas_.empty()) {
    throw std::domain_error("TableShrinker: need matching nonempty columns");
  }
  if (!std::is_sorted(lambdas_.begin(), lambdas_.end())) {
    throw std::domain_error("TableShrinker: lambda column must be sorted");
  }
  for (double e : etas_) {
    if (!(e >= 1.0)) {
      throw std::domain_error("TableShrinker: eta values must be >= 1");
    }
  }
}

double TableShrinker::operator()(double lambda) const {
  if (lambdas_.empty()) return 1.0;
  if (lambda <= lambdas_.front()) return etas_.front();
  if (lambda >= lambdas_.back()) return etas_.back();
  const auto it = std::upper_bound(lambdas_.begin(), lambdas_.end(), lambda);
  const std::size_t hi = static_cast<std::size_t>(it - lambdas_.begin());
  const std::size_t lo = hi - 1;
  const double t =
      (lambda - lambdas_[lo]) / (lambdas_[hi] - lambdas_[lo]);
  return etas_[lo] + t * (etas_[hi] - etas_[lo]);
}

void SimConfig::validate() const {
  if (n < 1 || p < 1) throw std::domain_error("SimConfig: need n, p >= 1");
  if (p > n) {
    throw std::domain_error("SimConfig: p <= n required (gamma <= 1)");
  }
  if (replications < 1) {
    throw std::domain_error("SimConfig: need at least one replication");
  }
  if (p > 2000 && !allow_large) {
    throw numeric_error("SimConfig: p=" + std::to_string(p) +
                        " exceeds the desk-scale ceiling of 2000; pass "
                        "allow_large to override");
  }
  if (static_cast<int>(spikes.size()) > p / 2) {
    throw std::domain_error("SimConfig: need r <= p/2 spikes");
  }
  for (std::size_t i = 0; i < spikes.size(); ++i) {
    if (!(spikes[i] > 1.0)) {
      throw std::domain_error("SimConfig: spikes must exceed 1");
    }
    if (i > 0 && !(spikes[i] < spikes[i - 1])) {
      throw std::domain_error("SimConfig: spikes must be strictly decreasing");
    }
  }
  if (shrinker == ShrinkerKind::custom && custom.empty()) {
    throw std::domain_error("SimConfig: custom shrinker table is empty");
  }
}

MatrixXd sample_covariance(const SimConfig& config, int replicate_index) {
  config.validate();
  const int p = config.p, n = config.n;
  NormalSampler sampler(stream_key(config.seed,
                                   static_cast<std::uint64_t>(replicate_index)));
  VectorXd scale = VectorXd::Ones(p);
  for (std::size_t i = 0; i < config.spikes.size(); ++i) {
    scale(static_cast<int>(i)) = std::sqrt(config.spikes[i]);
  }
  MatrixXd x(p, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < p; ++i) {
      x(i, j) = scale(i) * sampler.next();
    }
  }
  MatrixXd s = MatrixXd::Zero(p, p);
  s.selfadjointView<Eigen::Lower>().rankUpdate(x, 1.0 / n);
  return s.selfadjointView<Eigen::Lower>();
}

namespace {

struct Decomp {
  VectorXd values;  // descending
  MatrixXd vectors;
};

Decomp decompose_descending(const MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s);
  if (es.info() != Eigen::Success) {
    throw numeric_error("simulation: eigensolver failed");
  }
  const int p = static_cast<int>(s.rows());
  Decomp d;
  d.values = es.eigenvalues().reverse();
  d.vectors = es.eigenvectors().rowwise().reverse();
  (void)p;
  return d;
}

}  // namespace

SpikeStats empirical_spike_stats(const Eigen::MatrixXd& s, int r) {
  if (r < 1 || r > s.rows()) {
    throw std::domain_error("empirical_spike_stats: bad r");
  }
  const Decomp d = decompose_descending(s);
  SpikeStats out;
  out.eigenvalues.assign(d.values.data(), d.values.data() + r);
  out.cosines.resize(r, r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      out.cosines(i, j) = std::abs(d.vectors(j, i));
    }
  }
  return out;
}

Eigen::MatrixXd apply_shrinker(const Eigen::MatrixXd& s, double gamma,
                               LossId loss) {
  const Decomp d = decompose_descending(s);
  VectorXd eta(d.values.size());
  for (int i = 0; i < d.values.size(); ++i) {
    const double lam = std::max(d.values(i), 0.0);
    eta(i) = shrink(lam, gamma, loss).eta;
  }
  return d.vectors * eta.asDiagonal() * d.vectors.transpose();
}

double eval_loss_spiked(LossId loss, const VectorXd& diag, const MatrixXd& vk,
                        const VectorXd& eta) {
  if (vk.cols() != eta.size()) {
    throw std::domain_error("eval_loss_spiked: column/eta mismatch");
  }
  const int p = static_cast<int>(diag.size());
  std::vector<VectorXd> basis;
  std::vector<int> spike_coords;
  for (int i = 0; i < p; ++i) {
    if (diag(i) != 1.0) spike_coords.push_back(i);
  }
  for (int i : spike_coords) {
    VectorXd e = VectorXd::Zero(p);
    e(i) = 1.0;
    basis.push_back(std::move(e));
  }
  for (int k = 0; k < vk.cols(); ++k) {
    VectorXd v = vk.col(k);
    for (const VectorXd& q : basis) v -= q.dot(v) * q;
    // re-orthogonalize once for numerical hygiene
    for (const VectorXd& q : basis) v -= q.dot(v) * q;
    const double norm = v.norm();
    if (norm > 1e-10) basis.push_back(v / norm);
  }
  const int m = static_cast<int>(basis.size());
  if (m == 0) return 0.0;
  MatrixXd q(p, m);
  for (int j = 0; j < m; ++j) q.col(j) = basis[j];
  const MatrixXd aq = q.transpose() * diag.asDiagonal() * q;
  const MatrixXd qv = q.transpose() * vk;  // m x k
  MatrixXd bq = MatrixXd::Identity(m, m);
  for (int k = 0; k < vk.cols(); ++k) {
    bq += (eta(k) - 1.0) * qv.col(k) * qv.col(k).transpose();
  }
  return eval_loss(loss, aq, bq);
}

namespace {

double oracle_frobenius_from(const Decomp& d,
                             const std::vector<double>& spikes) {
  const int p = static_cast<int>(d.values.size());
  const int r = static_cast<int>(spikes.size());
  double sum_a2 = static_cast<double>(p - r);
  for (double l : spikes) sum_a2 += l * l;
  double sum_d2 = 0.0;
  for (int i = 0; i < p; ++i) {
    double di = 1.0;
    for (int k = 0; k < r; ++k) {
      const double v = d.vectors(k, i);
      di += (spikes[k] - 1.0) * v * v;
    }
    sum_d2 += di * di;
  }
  return sum_a2 - sum_d2;
}

double oracle_stein_from(const Decomp& d, const std::vector<double>& spikes) {
  const int p = static_cast<int>(d.values.size());
  const int r = static_cast<int>(spikes.size());
  double log_ell = 0.0;
  for (double l : spikes) log_ell += std::log(l);
  double sum_log_d = 0.0;
  for (int i = 0; i < p; ++i) {
    double denom = 1.0;
    for (int k = 0; k < r; ++k) {
      const double v = d.vectors(k, i);
      denom -= (1.0 - 1.0 / spikes[k]) * v * v;
    }
    if (!(denom > 0.0)) {
      throw numeric_error("oracle_loss: Stein oracle denominator <= 0");
    }
    sum_log_d += -std::log(denom);
  }
  return 0.5 * (log_ell - sum_log_d);
}

}  // namespace

double oracle_loss(const Eigen::MatrixXd& s, const std::vector<double>& spikes,
                   OracleKind kind) {
  const Decomp d = decompose_descending(s);
  return kind == OracleKind::frobenius ? oracle_frobenius_from(d, spikes)
                                       : oracle_stein_from(d, spikes);
}

namespace {

double block_residual_from(const Decomp& d, const std::vector<double>& spikes,
                           double gamma,
                           const std::function<double(double)>& eta_fn,
                           int r) {
  const int p = static_cast<int>(d.values.size());
  if (r < 1 || 2 * r > p) {
    throw std::domain_error("block_diag_residual: bad r");
  }
  (void)spikes;
  // Sign-fixed top sample eigenvectors: c_i = <e_i, v_i> >= 0.
  MatrixXd v = d.vectors.leftCols(r);
  for (int i = 0; i < r; ++i) {
    if (v(i, i) < 0.0) v.col(i) = -v.col(i);
  }
  // Gram-Schmidt of (e_1..e_r, v_1..v_r); the e-part is untouched, so only
  // the z vectors need computing. Orientation: <z_i, v_i> >= 0 so s_i >= 0.
  MatrixXd z(p, r);
  for (int i = 0; i < r; ++i) {
    VectorXd zi = v.col(i);
    zi.head(r).setZero();
    for (int j = 0; j < i; ++j) zi -= z.col(j).dot(zi) * z.col(j);
    const double norm = zi.norm();
    if (norm < 1e-8) {
      throw numeric_error("block_diag_residual: Gram-Schmidt degeneracy "
                          "(sample and population eigenvectors collide)");
    }
    zi /= norm;
    if (zi.dot(v.col(i)) < 0.0) zi = -zi;
    z.col(i) = zi;
  }
  // W columns, interleaved (e_1, z_1, e_2, z_2, ...).
  MatrixXd w(p, 2 * r);
  for (int i = 0; i < r; ++i) {
    w.col(2 * i).setZero();
    w.col(2 * i)(i) = 1.0;
    w.col(2 * i + 1) = z.col(i);
  }
  // Predicted blocks from empirical eta_i and c_i.
  MatrixXd pred = MatrixXd::Zero(2 * r, 2 * r);  // = D-tilde minus identity
  for (int i = 0; i < r; ++i) {
    const double c = std::min(v(i, i), 1.0);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double t = eta_fn(std::max(d.values(i), 0.0)) - 1.0;
    pred(2 * i, 2 * i) = t * c * c;
    pred(2 * i, 2 * i + 1) = t * c * s;
    pred(2 * i + 1, 2 * i) = t * c * s;
    pred(2 * i + 1, 2 * i + 1) = t * s * s;
  }
  // residual^2 = ||Shat - I||_F^2 - 2 tr((Shat - I) W pred W') + ||pred||_F^2
  // with Shat - I = sum_k (eta_k - 1) v_k v_k' over all eigenvalues.
  double norm_shat = 0.0;
  double cross = 0.0;
  for (int k = 0; k < p; ++k) {
    const double t = eta_fn(std::max(d.values(k), 0.0)) - 1.0;
    if (t == 0.0) {
      if (d.values(k) <= bulk_edge_upper(gamma)) break;  // sorted; all 1 below
      continue;
    }
    norm_shat += t * t;
    const VectorXd wv = w.transpose() * d.vectors.col(k);
    cross += t * wv.dot(pred * wv);
  }
  const double r2 = norm_shat - 2.0 * cross + pred.squaredNorm();
  return std::sqrt(std::max(r2, 0.0));
}

}  // namespace

double block_diag_residual(const Eigen::MatrixXd& s,
                           const std::vector<double>& spikes, double gamma,
                           const std::function<double(double)>& eta, int r) {
  const Decomp d = decompose_descending(s);
  return block_residual_from(d, spikes, gamma, eta, r);
}

namespace {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("EIGENSHRINK_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

MetricSummary summarize(const std::vector<double>& xs, double predicted) {
  MetricSummary m;
  m.predicted = predicted;
  const std::size_t n = xs.size();
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.se = std::sqrt(ss / static_cast<double>(n - 1)) /
           std::sqrt(static_cast<double>(n));
  }
  m.rel_dev = (predicted != 0.0 && std::isfinite(predicted))
                  ? (m.mean - predicted) / predicted
                  : std::numeric_limits<double>::quiet_NaN();
  return m;
}

}  // namespace

SimSummary run_study(const SimConfig& config) {
  config.validate();
  const double gamma = config.gamma();
  const int r = static_cast<int>(config.spikes.size());
  const int reps = config.replications;
  const double edge = bulk_edge_upper(gamma);

  const auto eta_for = [&](LossId loss) {
    return [&, loss](double lam) -> double {
      switch (config.shrinker) {
        case ShrinkerKind::optimal:
          return shrink(lam, gamma, loss).eta;
        case ShrinkerKind::hard_threshold:
          return hard_threshold(lam, gamma);
        case ShrinkerKind::custom:
          return lam > edge ? config.custom(lam) : 1.0;
      }
      return 1.0;
    };
  };

  std::vector<SimReplicate> reps_out(reps);
  const auto worker = [&](int rep) {
    const MatrixXd s = sample_covariance(config, rep);
    const Decomp d = decompose_descending(s);
    SimReplicate out;
    if (r > 0) {
      out.top_eigenvalues.assign(d.values.data(), d.values.data() + r);
      out.cosines.resize(r, r);
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
          out.cosines(i, j) = std::abs(d.vectors(j, i));
        }
      }
    } else {
      out.top_eigenvalues.assign(d.values.data(),
                                 d.values.data() + std::min<int>(1, config.p));
      out.cosines.resize(0, 0);
    }
    // Eigenvalues above the bulk edge keep non-unit shrunken values.
    int k_above = 0;
    while (k_above < config.p && d.values(k_above) > edge) ++k_above;
    const MatrixXd vk = d.vectors.leftCols(k_above);
    VectorXd population = VectorXd::Ones(config.p);
    for (int i = 0; i < r; ++i) population(i) = config.spikes[i];
    for (LossId loss : config.losses) {
      const auto eta_fn = eta_for(loss);
      VectorXd eta(k_above);
      for (int k = 0; k < k_above; ++k) eta(k) = eta_fn(d.values(k));
      out.losses[loss] = eval_loss_spiked(loss, population, vk, eta);
    }
    out.oracle_frobenius = oracle_frobenius_from(d, config.spikes);
    out.oracle_stein = oracle_stein_from(d, config.spikes);
    reps_out[rep] = std::move(out);
  };

  const int threads = std::min(resolve_threads(config.threads), reps);
  if (threads <= 1) {
    for (int rep = 0; rep < reps; ++rep) worker(rep);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int rep = next.fetch_add(1); rep < reps;
             rep = next.fetch_add(1)) {
          worker(rep);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  SimSummary summary;
  summary.config = config;
  const double lp = phase_transition(gamma);
  SpikedModel model{gamma, config.spikes};
  for (int i = 0; i < r; ++i) {
    std::vector<double> lam(reps), c2(reps);
    for (int rep = 0; rep < reps; ++rep) {
      lam[rep] = reps_out[rep].top_eigenvalues[i];
      const double c = reps_out[rep].cosines(i, i);
      c2[rep] = c * c;
    }
    const bool above = config.spikes[i] > lp;
    const double lam_pred =
        above ? lambda_of_ell(config.spikes[i], gamma) : edge;
    const double c2_pred = above ? cos2_of_ell(config.spikes[i], gamma) : 0.0;
    summary.top_eigenvalues.push_back(summarize(lam, lam_pred));
    summary.cos2.push_back(summarize(c2, c2_pred));
  }
  for (LossId loss : config.losses) {
    std::vector<double> xs(reps);
    for (int rep = 0; rep < reps; ++rep) xs[rep] = reps_out[rep].losses[loss];
    double pred = std::numeric_limits<double>::quiet_NaN();
    try {
      pred = asymptotic_loss(model, loss, eta_for(loss));
    } catch (const std::domain_error&) {
      // spikes at or below the transition have no deterministic prediction
    }
    summary.losses.emplace(loss, summarize(xs, pred));
  }
  {
    std::vector<double> xf(reps), xs(reps);
    for (int rep = 0; rep < reps; ++rep) {
      xf[rep] = reps_out[rep].oracle_frobenius;
      xs[rep] = reps_out[rep].oracle_stein;
    }
    double pf = std::numeric_limits<double>::quiet_NaN();
    double ps = std::numeric_limits<double>::quiet_NaN();
    try {
      pf = asymptotic_loss_optimal(model,
                                   LossId::norm_pivot(Norm::frobenius, 1));
      ps = asymptotic_loss_optimal(model,
                                   LossId::statistical(Statistical::stein));
    } catch (const std::domain_error&) {
    }
    summary.oracle_frobenius = summarize(xf, pf);
    summary.oracle_stein = summarize(xs, ps);
  }
  summary.replicates = std::move(reps_out);
  return summary;
}

}  // namespace eigenshrink
