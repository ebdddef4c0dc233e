#include <benchmark/benchmark.h>

#include "hdct/clr.hpp"
#include "hdct/datagen.hpp"
#include "hdct/mean_tests.hpp"
#include "hdct/moments.hpp"

using namespace hdct;

namespace {

ClrMatrix make_clr(int n, int p, std::uint64_t seed) {
  RngStream stream(seed, 0, 0);
  const Eigen::MatrixXd sqrt_cov =
      matrix_sqrt_sym(build_covariance(CovarianceSpec::b1(p)));
  const LogBasisMatrix w = generate_log_basis(
      Eigen::VectorXd::Zero(p), sqrt_cov, {Innovation::A1_Normal}, n, stream);
  return clr_transform(to_composition(w));
}

void BM_ClrTransform(benchmark::State& state) {
  const int n = 200;
  const int p = static_cast<int>(state.range(0));
  RngStream stream(1, 0, 0);
  const CompositionMatrix x = to_composition(generate_log_basis(
      Eigen::VectorXd::Zero(p), Eigen::MatrixXd::Identity(p, p),
      {Innovation::A1_Normal}, n, stream));
  for (auto _ : state) {
    benchmark::DoNotOptimize(clr_transform(x));
  }
}
BENCHMARK(BM_ClrTransform)->Unit(benchmark::kMicrosecond)->Arg(200)->Arg(600);

void BM_RunAllOne(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const ClrMatrix y = make_clr(200, p, 2);
  const Eigen::VectorXd mu0 = Eigen::VectorXd::Zero(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_all_one(y, mu0, 0.05));
  }
}
BENCHMARK(BM_RunAllOne)->Unit(benchmark::kMillisecond)->Arg(200)->Arg(400)->Arg(600);

void BM_RunAllTwo(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const ClrMatrix y1 = make_clr(100, p, 3);
  const ClrMatrix y2 = make_clr(100, p, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_all_two(y1, y2, 0.05));
  }
}
BENCHMARK(BM_RunAllTwo)->Unit(benchmark::kMillisecond)->Arg(200)->Arg(600);

void BM_CorrTraceGram(benchmark::State& state) {
  const int n = 200;
  const int p = static_cast<int>(state.range(0));
  const ClrMatrix y = make_clr(n, p, 5);
  const Eigen::VectorXd mean = y.values().colwise().mean();
  const Eigen::MatrixXd dev = y.values().rowwise() - mean.transpose();
  const Eigen::VectorXd var = dev.colwise().squaredNorm() / double(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(corr_trace_sq_gram(dev, var, n));
  }
}
BENCHMARK(BM_CorrTraceGram)->Unit(benchmark::kMillisecond)->Arg(200)->Arg(600);

void BM_CorrTraceNaive(benchmark::State& state) {
  const int n = 200;
  const int p = static_cast<int>(state.range(0));
  const ClrMatrix y = make_clr(n, p, 6);
  const Eigen::VectorXd mean = y.values().colwise().mean();
  const Eigen::MatrixXd dev = y.values().rowwise() - mean.transpose();
  const Eigen::VectorXd var = dev.colwise().squaredNorm() / double(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(corr_trace_sq_naive(dev, var, n));
  }
}
BENCHMARK(BM_CorrTraceNaive)->Unit(benchmark::kMillisecond)->Arg(200)->Arg(600);

void BM_BuildCovariance(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_covariance(CovarianceSpec::b3(p, 42)));
  }
}
BENCHMARK(BM_BuildCovariance)->Unit(benchmark::kMillisecond)->Arg(200)->Arg(600);

void BM_MatrixSqrt(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Eigen::MatrixXd sigma = build_covariance(CovarianceSpec::b1(p));
  for (auto _ : state) {
    benchmark::DoNotOptimize(matrix_sqrt_sym(sigma));
  }
}
BENCHMARK(BM_MatrixSqrt)->Unit(benchmark::kMillisecond)->Arg(200)->Arg(600);

void BM_Innovations(benchmark::State& state) {
  const Innovation kind = static_cast<Innovation>(state.range(0));
  RngStream stream(7, 0, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_innovations({kind}, 200, 200, stream));
  }
}
BENCHMARK(BM_Innovations)
    ->Unit(benchmark::kMillisecond)
    ->Arg(static_cast<int>(Innovation::A1_Normal))
    ->Arg(static_cast<int>(Innovation::A2_ScaledT3))
    ->Arg(static_cast<int>(Innovation::A3_MixtureNormal));

// One full replication of the size experiment work unit.
void BM_Replication(benchmark::State& state) {
  const int n = 200;
  const int p = static_cast<int>(state.range(0));
  const Eigen::MatrixXd sqrt_cov =
      matrix_sqrt_sym(build_covariance(CovarianceSpec::b1(p)));
  const Eigen::VectorXd mu0 = Eigen::VectorXd::Zero(p);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    RngStream stream(8, rep++, 0);
    const ClrMatrix y = clr_transform(to_composition(LogBasisMatrix::from(
        sample_innovations({Innovation::A1_Normal}, n, p, stream) * sqrt_cov)));
    benchmark::DoNotOptimize(run_all_one(y, mu0, 0.05));
  }
}
BENCHMARK(BM_Replication)->Unit(benchmark::kMillisecond)->Arg(200)->Arg(600);

}  // namespace

BENCHMARK_MAIN();
