#include <benchmark/benchmark.h>

#include "eigenshrink/loss_kernel.hpp"
#include "eigenshrink/mat2.hpp"
#include "eigenshrink/shrinker.hpp"
#include "eigenshrink/simulation.hpp"

namespace es = eigenshrink;

namespace {

void BM_ShrinkClosed(benchmark::State& state) {
  const es::LossId loss = es::LossId::norm_pivot(es::Norm::frobenius, 1);
  double lam = 4.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(es::shrink(lam, 1.0, loss).eta);
    lam = lam < 90.0 ? lam + 0.37 : 4.5;
  }
}
BENCHMARK(BM_ShrinkClosed);

void BM_ShrinkNumeric(benchmark::State& state) {
  const es::LossId loss = es::LossId::statistical(es::Statistical::affinity);
  double lam = 4.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        es::shrink(lam, 1.0, loss, es::ShrinkerMethod::numeric).eta);
    lam = lam < 90.0 ? lam + 0.37 : 4.5;
  }
}
BENCHMARK(BM_ShrinkNumeric);

void BM_EvalLossFast(benchmark::State& state) {
  const es::LossId loss =
      es::LossId::norm_pivot(es::Norm::nuclear, static_cast<int>(state.range(0)));
  const es::SymMat2 a = es::mat_A(5.0);
  const es::SymMat2 b = es::mat_B(3.0, 0.9, 0.43588989435406736);
  for (auto _ : state) {
    benchmark::DoNotOptimize(es::eval_loss(loss, a, b));
  }
}
BENCHMARK(BM_EvalLossFast)->Arg(1)->Arg(5)->Arg(7);

void BM_EvalLossDense(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const es::LossId loss = es::LossId::norm_pivot(es::Norm::nuclear, 5);
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(p, p);
  a(0, 0) = 5.0;
  Eigen::MatrixXd q = Eigen::MatrixXd::Random(p, p);
  Eigen::MatrixXd b =
      Eigen::MatrixXd::Identity(p, p) + 0.1 * (q + q.transpose()) / p;
  b = (b + b.transpose()) / 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(es::eval_loss(loss, a, b));
  }
}
BENCHMARK(BM_EvalLossDense)->Arg(32)->Arg(128);

void BM_SampleCovariance(benchmark::State& state) {
  es::SimConfig config;
  config.n = static_cast<int>(state.range(0));
  config.p = config.n / 2;
  config.spikes = {5.0};
  int rep = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(es::sample_covariance(config, rep++));
  }
}
BENCHMARK(BM_SampleCovariance)->Arg(200)->Arg(800);

}  // namespace

BENCHMARK_MAIN();
