#include "interplab/estimator.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>

namespace interplab {

GramMatrix gram_matrix(const FourierKernel& kernel, const SampleSet& samples) {
  return gram_matrix_with(
      [&](double a, double b) { return kernel.eval(a, b); }, samples,
      "fourier");
}

GramMatrix residual_gram_matrix(const FourierKernel& kernel,
                                const SampleSet& samples) {
  return gram_matrix_with(
      [&](double a, double b) { return kernel.residual(a, b); }, samples,
      "fourier-residual");
}

GramMatrix second_moment_gram_matrix(const FourierKernel& kernel,
                                     const SampleSet& samples) {
  return gram_matrix_with(
      [&](double a, double b) { return kernel.second_moment(a, b); }, samples,
      "fourier-second-moment");
}

DualWeights ridge_solve(const GramMatrix& gram, const Eigen::VectorXd& y,
                        double alpha, const SampleSet& samples) {
  const Eigen::Index n = gram.entries.rows();
  if (gram.entries.cols() != n || y.size() != n ||
      static_cast<Eigen::Index>(samples.size()) != n) {
    throw DimensionMismatch("ridge_solve: gram/y/samples sizes disagree");
  }
  if (alpha < 0.0) throw InvalidParams("ridge_solve: alpha must be >= 0");

  Eigen::MatrixXd system = gram.entries;
  system.diagonal().array() += alpha;

  Eigen::LLT<Eigen::MatrixXd> llt(system);
  if (llt.info() != Eigen::Success) {
    // Recover the most negative/smallest pivot for the error report.
    Eigen::LDLT<Eigen::MatrixXd> ldlt(system);
    const double pivot =
        ldlt.info() == Eigen::Success ? ldlt.vectorD().minCoeff()
                                      : std::numeric_limits<double>::quiet_NaN();
    throw GramSingular(
        alpha == 0.0
            ? "ridge_solve: Gram matrix numerically singular at alpha = 0 "
              "(coincident samples or d < n); smallest pivot " +
                  std::to_string(pivot)
            : "ridge_solve: factorization of alpha I + K failed; smallest "
              "pivot " +
                  std::to_string(pivot),
        pivot);
  }

  Eigen::VectorXd z = llt.solve(y);
  // One refinement step keeps the residual near machine precision even for
  // ill-conditioned interpolation systems.
  Eigen::VectorXd residual = y - system * z;
  z += llt.solve(residual);

  const double rel_residual = (y - system * z).norm();
  if (!(rel_residual <= 1e-8 * y.norm() + 1e-300)) {
    throw GramSingular(
        "ridge_solve: residual " + std::to_string(rel_residual) +
            " exceeds 1e-8 * ||y||; system effectively singular",
        llt.matrixLLT().diagonal().minCoeff());
  }

  return DualWeights{std::move(z), alpha, samples};
}

double predict(const DualWeights& weights, const FourierKernel& kernel,
               double x) {
  double value = 0.0;
  for (Eigen::Index i = 0; i < weights.z.size(); ++i) {
    value += weights.z[i] *
             kernel.eval(x, weights.samples[static_cast<std::size_t>(i)]);
  }
  return value;
}

Eigen::VectorXd predict_many(const DualWeights& weights,
                             const FourierKernel& kernel,
                             std::span<const double> xs) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t k = 0; k < xs.size(); ++k) {
    out[static_cast<Eigen::Index>(k)] = predict(weights, kernel, xs[k]);
  }
  return out;
}

double l2_distance_exact(const DualWeights& weights, const FourierKernel& kernel,
                         const TargetFunction& target) {
  if (target.degree() > kernel.p) {
    throw UnsupportedTarget(
        "l2_distance_exact: target has coefficients outside the top block");
  }
  const Eigen::Index n = weights.z.size();
  const GramMatrix k2 = second_moment_gram_matrix(kernel, weights.samples);
  Eigen::VectorXd target_at_samples(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    target_at_samples[i] =
        target.eval(weights.samples[static_cast<std::size_t>(i)]);
  }
  double dist_sq = weights.z.dot(k2.entries * weights.z) -
                   2.0 * weights.z.dot(target_at_samples) +
                   target.l2_norm_sq();
  if (dist_sq < 0.0) {
    if (dist_sq < -1e-10) {
      throw Error("l2_distance_exact: squared distance negative beyond "
                  "rounding tolerance");
    }
    dist_sq = 0.0;
  }
  return std::sqrt(dist_sq);
}

double hilbert_norm_sq(const DualWeights& weights, const GramMatrix& gram) {
  return weights.z.dot(gram.entries * weights.z);
}

}  // namespace interplab
