#include "interplab/kernels.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace interplab {

namespace {

constexpr double kPi = std::numbers::pi;

// Series branch for |N pi t| < 1e-4 with N = 2m+1: the next omitted term is
// O((N pi t)^4), i.e. below 1e-17 relative at the threshold.
double dirichlet_series(double big_n, double t) {
  const double pt = kPi * t;
  return big_n * (1.0 - (big_n * big_n - 1.0) * pt * pt / 6.0);
}

}  // namespace

double dirichlet_sinc(long long m, double t) {
  if (m < 0) throw InvalidParams("dirichlet_sinc: m must be >= 0");
  if (!std::isfinite(t)) throw InvalidParams("dirichlet_sinc: t must be finite");
  if (m == 0) return 1.0;

  // Reduce to [-0.5, 0.5); the kernel has period 1 and is even, so work on |t|.
  double u = t - std::round(t);
  u = std::fabs(u);

  const double big_n = static_cast<double>(2 * m + 1);
  if (big_n * kPi * u < 1e-4) {
    return dirichlet_series(big_n, u);
  }
  // sin(N pi u) = sin(pi * (N u mod 2)); IEEE remainder is exact, so the
  // argument passed to sine stays in [-pi, pi] even for N ~ 2e9.
  const double num_arg = std::remainder(big_n * u, 2.0);
  return std::sin(kPi * num_arg) / std::sin(kPi * u);
}

FourierKernel FourierKernel::create(long long p, long long d, double gamma) {
  if (p < 0 || d <= p) throw InvalidParams("fourier kernel: need d > p >= 0");
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw InvalidParams("fourier kernel: gamma must be in [0,1]");
  }
  return FourierKernel{p, d, gamma};
}

FourierKernel FourierKernel::from_params(const BiLevelParams& params) {
  return create(params.p, params.d, params.gamma);
}

double FourierKernel::eval(double x, double y) const {
  const double t = x - y;
  return (1.0 - gamma) * dirichlet_sinc(p, t) + gamma * dirichlet_sinc(d, t);
}

double FourierKernel::residual(double x, double y) const {
  const double t = x - y;
  return gamma * (dirichlet_sinc(d, t) - dirichlet_sinc(p, t));
}

double FourierKernel::second_moment(double x, double y) const {
  const double t = x - y;
  const double g2 = gamma * gamma;
  return (1.0 - g2) * dirichlet_sinc(p, t) + g2 * dirichlet_sinc(d, t);
}

Eigen::MatrixXcd top_feature_matrix(long long p, const SampleSet& samples) {
  if (p < 0) throw InvalidParams("top_feature_matrix: p must be >= 0");
  const auto n = static_cast<Eigen::Index>(samples.size());
  const auto width = static_cast<Eigen::Index>(2 * p + 1);
  Eigen::MatrixXcd v(n, width);
  for (Eigen::Index i = 0; i < n; ++i) {
    // Fill l = 0..p by repeated rotation, mirror to l < 0 by conjugation.
    const std::complex<double> step =
        std::polar(1.0, 2.0 * kPi * samples[static_cast<std::size_t>(i)]);
    std::complex<double> value(1.0, 0.0);
    for (long long l = 0; l <= p; ++l) {
      v(i, static_cast<Eigen::Index>(p + l)) = value;
      v(i, static_cast<Eigen::Index>(p - l)) = std::conj(value);
      value *= step;
    }
  }
  return v;
}

IndepGaussianFeatures make_indep_gaussian_features(const Spectrum& spectrum,
                                                   std::size_t n,
                                                   std::uint64_t seed) {
  const long long d = spectrum.top_count() + spectrum.tail_count();
  if (d > 200000) {
    throw InvalidParams("indep features: d capped at 2e5");
  }
  Eigen::MatrixXd features(static_cast<Eigen::Index>(n),
                           static_cast<Eigen::Index>(d));
  Xoshiro256pp rng(seed);
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
      features(i, j) = rng.normal();
    }
  }
  return IndepGaussianFeatures{spectrum.top_count(), d, spectrum,
                               std::move(features), seed};
}

Eigen::MatrixXd indep_gaussian_residual_gram(const IndepGaussianFeatures& f) {
  const long long tail = f.d - f.p;
  if (f.spectrum.tail_count() != tail) {
    throw DimensionMismatch("residual gram: spectrum tail count != d - p");
  }
  const auto cols = static_cast<Eigen::Index>(tail);
  const auto offset = static_cast<Eigen::Index>(f.p);
  Eigen::VectorXd tail_values(cols);
  if (f.spectrum.is_bi_level()) {
    tail_values.setConstant(f.spectrum.tail_value());
  } else {
    for (Eigen::Index j = 0; j < cols; ++j) {
      tail_values(j) = f.spectrum.values()[static_cast<std::size_t>(f.p + j)];
    }
  }
  const auto tail_block = f.feature_matrix.middleCols(offset, cols);
  Eigen::MatrixXd gram =
      tail_block * tail_values.asDiagonal() * tail_block.transpose();
  // Exact symmetry, the product is only symmetric to rounding.
  gram = ((gram + gram.transpose()) * 0.5).eval();
  return gram;
}

}  // namespace interplab
