#include <benchmark/benchmark.h>

#include "interplab/diagnostics.hpp"
#include "interplab/estimator.hpp"
#include "interplab/risks.hpp"

using namespace interplab;

namespace {

SampleSet samples_for(std::size_t n) {
  Xoshiro256pp rng(12345);
  return draw_uniform_samples(n, rng);
}

void DirichletSmallBandwidth(benchmark::State& state) {
  Xoshiro256pp rng(1);
  double t = rng.uniform();
  for (auto _ : state) {
    benchmark::DoNotOptimize(dirichlet_sinc(50, t));
    t += 0.61803398875;
  }
}
BENCHMARK(DirichletSmallBandwidth);

void DirichletHugeBandwidth(benchmark::State& state) {
  Xoshiro256pp rng(2);
  double t = rng.uniform();
  for (auto _ : state) {
    benchmark::DoNotOptimize(dirichlet_sinc(1000000000, t));
    t += 0.61803398875;
  }
}
BENCHMARK(DirichletHugeBandwidth);

void GramAssembly(benchmark::State& state) {
  const auto kernel = FourierKernel::create(5, 1000000, 1e-4);
  const SampleSet samples = samples_for(static_cast<std::size_t>(state.range()));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gram_matrix(kernel, samples).entries.sum());
  }
  state.SetComplexityN(state.range());
}
BENCHMARK(GramAssembly)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void RidgeSolve(benchmark::State& state) {
  const auto kernel = FourierKernel::create(5, 1000000, 1e-4);
  const auto n = static_cast<std::size_t>(state.range());
  const SampleSet samples = samples_for(n);
  const GramMatrix gram = gram_matrix(kernel, samples);
  Xoshiro256pp rng(3);
  Eigen::VectorXd y = Eigen::VectorXd::NullaryExpr(
      static_cast<Eigen::Index>(n), [&]() { return rng.normal(); });
  for (auto _ : state) {
    benchmark::DoNotOptimize(ridge_solve(gram, y, 1e-3, samples).z.sum());
  }
  state.SetComplexityN(state.range());
}
BENCHMARK(RidgeSolve)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void ExcessRiskQuadrature(benchmark::State& state) {
  const auto kernel = FourierKernel::create(4, 100000, 1e-3);
  const SampleSet samples = samples_for(256);
  const TargetFunction target = generate_target(4, 7);
  const ObservationSet obs = gaussian_observations(target, samples, 1.0, 8);
  const DualWeights w =
      ridge_solve(gram_matrix(kernel, samples), obs.y, 1e-3, samples);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        excess_classification_risk(w, kernel, target, 8192));
  }
}
BENCHMARK(ExcessRiskQuadrature);

void ResidualGramEigenvalues(benchmark::State& state) {
  const auto kernel = FourierKernel::create(10, 10000, 1e-3);
  const SampleSet samples = samples_for(256);
  for (auto _ : state) {
    benchmark::DoNotOptimize(residual_gram_stats(kernel, samples).lambda_max);
  }
}
BENCHMARK(ResidualGramEigenvalues);

}  // namespace

BENCHMARK_MAIN();
