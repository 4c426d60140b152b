#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <utility>

#include "interplab/kernels.hpp"
#include "interplab/samples.hpp"
#include "interplab/target.hpp"

namespace interplab {

/// n x n symmetric kernel matrix. Symmetry is exact: entries are computed for
/// i <= j and mirrored.
struct GramMatrix {
  Eigen::MatrixXd entries;
  std::string kernel_tag;
};

template <typename KernelFn>
GramMatrix gram_matrix_with(KernelFn&& kernel, const SampleSet& samples,
                            std::string tag) {
  const auto n = static_cast<Eigen::Index>(samples.size());
  GramMatrix g{Eigen::MatrixXd(n, n), std::move(tag)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = kernel(samples[static_cast<std::size_t>(i)],
                              samples[static_cast<std::size_t>(j)]);
      g.entries(i, j) = v;
      g.entries(j, i) = v;
    }
  }
  return g;
}

GramMatrix gram_matrix(const FourierKernel& kernel, const SampleSet& samples);
GramMatrix residual_gram_matrix(const FourierKernel& kernel,
                                const SampleSet& samples);
GramMatrix second_moment_gram_matrix(const FourierKernel& kernel,
                                     const SampleSet& samples);

/// Solved dual coefficients z of (alpha I + K) z = y, together with the
/// regularization actually used and the samples solved against. The estimate
/// is f(x) = sum_i z_i k(x, x_i).
struct DualWeights {
  Eigen::VectorXd z;
  double alpha = 0.0;
  SampleSet samples;
};

/// Solves (alpha I + K) z = y by Cholesky factorization with one step of
/// iterative refinement. No jitter is ever added: a failed factorization at
/// alpha = 0 throws GramSingular (carrying the smallest pivot) so the caller
/// can resample instead of silently regularizing.
DualWeights ridge_solve(const GramMatrix& gram, const Eigen::VectorXd& y,
                        double alpha, const SampleSet& samples);

double predict(const DualWeights& weights, const FourierKernel& kernel,
               double x);

Eigen::VectorXd predict_many(const DualWeights& weights,
                             const FourierKernel& kernel,
                             std::span<const double> xs);

/// Exact squared L2 geometry: ||f - target||^2 = z^T K2 z - 2 z^T t + ||target||^2
/// with K2 the second-moment Gram and t_i = target(x_i) (valid because the
/// target lives in the unit-eigenvalue top block). Returns the square root,
/// clamping tiny negative rounding residue to zero.
double l2_distance_exact(const DualWeights& weights, const FourierKernel& kernel,
                         const TargetFunction& target);

/// z^T K z, the squared Hilbert norm of the represented function.
double hilbert_norm_sq(const DualWeights& weights, const GramMatrix& gram);

}  // namespace interplab
