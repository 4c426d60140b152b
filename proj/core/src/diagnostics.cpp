#include "interplab/diagnostics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "interplab/estimator.hpp"

namespace interplab {

ResidualGramStats residual_gram_stats(const FourierKernel& kernel,
                                      const SampleSet& samples) {
  if (samples.size() < 1) {
    throw InvalidParams("residual_gram_stats: need at least one sample");
  }
  const GramMatrix gram = residual_gram_matrix(kernel, samples);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram.entries,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigFailure("residual_gram_stats: eigensolver did not converge");
  }
  ResidualGramStats stats;
  stats.lambda_min_raw = solver.eigenvalues().minCoeff();
  stats.lambda_max = solver.eigenvalues().maxCoeff();
  const double trace = gram.entries.trace();
  stats.lambda_min = std::max(stats.lambda_min_raw, 1e-14 * trace);
  return stats;
}

double top_block_deviation(long long p, const SampleSet& samples) {
  const auto n = static_cast<double>(samples.size());
  if (samples.size() < 1) {
    throw InvalidParams("top_block_deviation: need at least one sample");
  }
  const Eigen::MatrixXcd v = top_feature_matrix(p, samples);
  Eigen::MatrixXcd m = (v.adjoint() * v) / n;
  m -= Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigFailure("top_block_deviation: eigensolver did not converge");
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double trace_rstar_r(const FourierKernel& kernel, const SampleSet& samples) {
  return static_cast<double>(samples.size()) * 2.0 *
         static_cast<double>(kernel.d - kernel.p) * kernel.gamma * kernel.gamma;
}

double trace_rstar_r(const IndepGaussianFeatures& features) {
  const long long tail = features.d - features.p;
  if (features.spectrum.tail_count() != tail) {
    throw DimensionMismatch("trace_rstar_r: spectrum tail count != d - p");
  }
  double total = 0.0;
  for (long long l = 0; l < tail; ++l) {
    const double lambda =
        features.spectrum.is_bi_level()
            ? features.spectrum.tail_value()
            : features.spectrum.values()[static_cast<std::size_t>(features.p + l)];
    total += lambda * lambda *
             features.feature_matrix.col(static_cast<Eigen::Index>(features.p + l))
                 .squaredNorm();
  }
  return total;
}

ConcentrationReport concentration_report(const FourierKernel& kernel,
                                     const SampleSet& samples, double alpha,
                                     std::uint64_t seed) {
  if (samples.size() < 2) {
    throw InvalidParams("concentration_report: need n >= 2");
  }
  if (alpha < 0.0) throw InvalidParams("concentration_report: alpha must be >= 0");
  const ResidualGramStats stats = residual_gram_stats(kernel, samples);
  ConcentrationReport report;
  report.lambda_min_rr_star = stats.lambda_min;
  report.lambda_max_rr_star = stats.lambda_max;
  report.lambda_min_raw = stats.lambda_min_raw;
  report.condition = stats.lambda_max / stats.lambda_min;
  report.tr_rstar_r_l2 = trace_rstar_r(kernel, samples);
  report.deviation_cstar_c = top_block_deviation(kernel.p, samples);
  const double alpha_l = alpha + stats.lambda_min;
  const double alpha_u = alpha + stats.lambda_max;
  const double spread =
      alpha_u + alpha_l > 0.0 ? (alpha_u - alpha_l) / (alpha_u + alpha_l) : 0.0;
  report.c_value = spread + 2.0 * report.deviation_cstar_c;
  report.n = static_cast<long long>(samples.size());
  report.p_count = 2 * kernel.p + 1;
  report.d = kernel.d;
  report.seed = seed;
  return report;
}

}  // namespace interplab
