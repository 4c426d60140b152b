#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "interplab/diagnostics.hpp"
#include "interplab/spectra.hpp"

using namespace interplab;

namespace {

SampleSet random_samples(std::size_t n, std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  return draw_uniform_samples(n, rng);
}

SampleSet equispaced(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = static_cast<double>(i) / static_cast<double>(n);
  }
  return SampleSet(x);
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return values[values.size() / 2];
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("single-sample residual gram is its diagonal") {
  const auto kernel = FourierKernel::create(2, 500, 0.01);
  const SampleSet one({0.42});
  const auto stats = residual_gram_stats(kernel, one);
  CHECK(stats.lambda_max ==
        doctest::Approx(kernel.residual_diagonal()).epsilon(1e-12));
  CHECK(stats.lambda_min ==
        doctest::Approx(kernel.residual_diagonal()).epsilon(1e-12));
}

TEST_CASE("residual gram eigenvalues scale linearly in gamma") {
  const SampleSet samples = random_samples(3, 21);
  const auto lo = residual_gram_stats(FourierKernel::create(1, 5, 0.1), samples);
  const auto hi = residual_gram_stats(FourierKernel::create(1, 5, 0.2), samples);
  CHECK(hi.lambda_max == doctest::Approx(2.0 * lo.lambda_max).epsilon(1e-9));
  CHECK(hi.lambda_min == doctest::Approx(2.0 * lo.lambda_min).epsilon(1e-9));
}

TEST_CASE("residual gram matches the explicit tail-feature construction") {
  const long long p = 1, d = 3;
  const double gamma = 0.3;
  const auto kernel = FourierKernel::create(p, d, gamma);
  const SampleSet samples = random_samples(4, 22);

  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(4, 4);
  for (long long l = -d; l <= d; ++l) {
    if (std::llabs(l) <= p) continue;
    Eigen::VectorXcd w(4);
    for (int i = 0; i < 4; ++i) {
      w(i) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(l) *
                                 samples[static_cast<std::size_t>(i)]);
    }
    sum += gamma * w * w.adjoint();
  }
  CHECK(sum.imag().norm() <= 1e-10);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> brute(sum.real());
  const auto stats = residual_gram_stats(kernel, samples);
  CHECK(std::fabs(stats.lambda_max - brute.eigenvalues().maxCoeff()) <= 1e-8);
  CHECK(std::fabs(stats.lambda_min_raw - brute.eigenvalues().minCoeff()) <= 1e-8);
}

TEST_CASE("top-block deviation closed cases") {
  CHECK(top_block_deviation(0, random_samples(17, 23)) == 0.0);

  // all samples identical at p = 1: || v v^H - I || = 2p = 2
  const SampleSet repeated({0.3, 0.3, 0.3, 0.3, 0.3});
  CHECK(top_block_deviation(1, repeated) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("top-block deviation shrinks with the sample count") {
  const long long p = 4;
  std::vector<double> small_devs, large_devs;
  for (std::uint64_t t = 0; t < 20; ++t) {
    small_devs.push_back(top_block_deviation(p, random_samples(250, 300 + t)));
    large_devs.push_back(top_block_deviation(p, random_samples(4000, 400 + t)));
  }
  CHECK(median(large_devs) < median(small_devs));
}

TEST_CASE("trace of R*R is exact for Fourier features") {
  const auto params = BiLevelParams::create(200, 2.4, 0.35, 0.4);
  const auto kernel = FourierKernel::from_params(params);
  const SampleSet samples = random_samples(37, 24);
  const Spectrum spectrum = bilevel_spectrum(params, Indexing::fourier_symmetric);
  CHECK(trace_rstar_r(kernel, samples) ==
        doctest::Approx(37.0 * spectrum.traces().tail_sq).epsilon(1e-13));
  CHECK(trace_rstar_r(kernel, SampleSet{}) == 0.0);
}

TEST_CASE("trace of R*R concentrates for independent features") {
  // Monte Carlo oracle: E[tr] = n * sum of squared tail eigenvalues.
  const Spectrum s = Spectrum::explicit_values(
      std::vector<double>(30, 0.5), 2);  // flat 0.5, top block of 2
  const double expected = 5.0 * 28.0 * 0.25;
  double mean = 0.0;
  const int redraws = 1000;
  for (int k = 0; k < redraws; ++k) {
    mean += trace_rstar_r(
        make_indep_gaussian_features(s, 5, 900 + static_cast<std::uint64_t>(k)));
  }
  mean /= redraws;
  CHECK(mean == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("c value vanishes when the residual gram is a multiple of identity") {
  // Equispaced samples with the tail spanning whole residue classes mod n:
  // off-diagonal residual entries cancel exactly and C*C = n I.
  const long long n = 8, p = 2;
  const auto kernel = FourierKernel::create(p, p + 3 * n, 0.05);
  const auto report = concentration_report(kernel, equispaced(8), 0.0);
  CHECK(report.c_value <= 1e-9);
  CHECK(report.deviation_cstar_c <= 1e-10);
  CHECK(report.condition == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("zero tail collapses the bracket to (alpha, alpha)") {
  const auto kernel = FourierKernel::create(2, 100, 0.0);
  const SampleSet samples = random_samples(12, 25);
  const auto report = concentration_report(kernel, samples, 0.5);
  CHECK(report.lambda_max_rr_star == 0.0);
  CHECK(report.lambda_min_rr_star == 0.0);
  CHECK(report.c_value ==
        doctest::Approx(2.0 * report.deviation_cstar_c).epsilon(1e-12));
}

TEST_CASE("heavily overparametrized ensembles keep the median c below 1/2") {
  // n = 100, d = 2e6 >> n^2, small top block; threshold from a pilot run.
  const auto kernel = FourierKernel::create(1, 2000000, 1e-4);
  std::vector<double> c_values;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto report =
        concentration_report(kernel, random_samples(100, 500 + t), 0.0, t);
    c_values.push_back(report.c_value);
  }
  CHECK(median(c_values) < 0.5);
}

TEST_CASE("independent-feature top block concentrates as n grows") {
  // spectral deviation of (1/n) W^T W - I for gaussian features
  const int p_dim = 10;
  auto deviation = [&](int n, std::uint64_t seed) {
    const Spectrum s = Spectrum::bi_level(1.0, 1.0, p_dim, 1);
    const auto f = make_indep_gaussian_features(s, static_cast<std::size_t>(n),
                                                seed);
    const Eigen::MatrixXd top = f.feature_matrix.leftCols(p_dim);
    Eigen::MatrixXd m = top.transpose() * top / static_cast<double>(n) -
                        Eigen::MatrixXd::Identity(p_dim, p_dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
  };
  std::vector<double> small_devs, large_devs;
  for (std::uint64_t t = 0; t < 11; ++t) {
    small_devs.push_back(deviation(250, 600 + t));
    large_devs.push_back(deviation(4000, 700 + t));
  }
  CHECK(median(large_devs) < median(small_devs));
}

}  // TEST_SUITE
