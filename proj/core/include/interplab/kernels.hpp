#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "interplab/samples.hpp"
#include "interplab/spectra.hpp"

namespace interplab {

/// Period-1 Dirichlet kernel D_m(t) = sin((2m+1) pi t) / sin(pi t), with the
/// removable singularities at integer t evaluated by series. |D_m| <= 2m+1.
///
/// Numerics: t is first reduced to [-0.5, 0.5); the numerator argument is then
/// reduced again via exact IEEE remainder((2m+1)t, 2), so m up to ~1e9 never
/// feeds a large argument to libm sine.
double dirichlet_sinc(long long m, double t);

/// Two-level symmetric Fourier kernel
///   k(x,y) = (1-gamma) D_p(x-y) + gamma D_d(x-y),
/// together with its residual (tail-only) and second-moment companions.
/// gamma = 0 degenerates to the pure top-block kernel D_p.
struct FourierKernel {
  long long p = 0;
  long long d = 0;
  double gamma = 0.0;

  static FourierKernel create(long long p, long long d, double gamma);
  static FourierKernel from_params(const BiLevelParams& params);

  /// (1-gamma) D_p(x-y) + gamma D_d(x-y)
  double eval(double x, double y) const;
  /// gamma (D_d - D_p)(x-y): the kernel restricted to the tail block.
  double residual(double x, double y) const;
  /// (1-gamma^2) D_p(x-y) + gamma^2 D_d(x-y): eigenvalues squared; gives the
  /// L2 inner products of kernel sections.
  double second_moment(double x, double y) const;

  double diagonal() const noexcept {
    return (1.0 - gamma) * static_cast<double>(2 * p + 1) +
           gamma * static_cast<double>(2 * d + 1);
  }
  double residual_diagonal() const noexcept {
    return 2.0 * static_cast<double>(d - p) * gamma;
  }
  double second_moment_diagonal() const noexcept {
    return (1.0 - gamma * gamma) * static_cast<double>(2 * p + 1) +
           gamma * gamma * static_cast<double>(2 * d + 1);
  }
};

/// n x (2p+1) matrix with entry (i, l) = exp(j 2 pi l x_i) for l = -p..p.
Eigen::MatrixXcd top_feature_matrix(long long p, const SampleSet& samples);

/// Explicit independent-feature ensemble: feature_matrix is n x d with i.i.d.
/// standard normal entries under the declared seed; column l carries
/// eigenvalue spectrum[l]. d is capped at 2e5 to keep memory bounded.
struct IndepGaussianFeatures {
  long long p = 0;
  long long d = 0;
  Spectrum spectrum;
  Eigen::MatrixXd feature_matrix;  // n x d
  std::uint64_t seed = 0;
};

IndepGaussianFeatures make_indep_gaussian_features(const Spectrum& spectrum,
                                                   std::size_t n,
                                                   std::uint64_t seed);

/// Residual Gram RR* = sum_{l > p} lambda_l w_l w_l^T assembled from the
/// explicit tail columns. Symmetric positive semidefinite by construction.
Eigen::MatrixXd indep_gaussian_residual_gram(const IndepGaussianFeatures& f);

}  // namespace interplab
