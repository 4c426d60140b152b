#include "interplab/risks.hpp"

#include <algorithm>
#include <cmath>

namespace interplab {

namespace {

inline double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace

ObservationSet gaussian_observations(const TargetFunction& target,
                                     const SampleSet& samples, double sigma,
                                     std::uint64_t rng_seed) {
  if (sigma < 0.0) throw InvalidParams("gaussian_observations: sigma < 0");
  Xoshiro256pp rng(rng_seed);
  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::VectorXd y(n);
  Eigen::VectorXd xi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    xi[i] = sigma * rng.normal();
    y[i] = target.eval(samples[static_cast<std::size_t>(i)]) + xi[i];
  }
  return ObservationSet{samples, std::move(y),
                        NoiseModel{NoiseModel::Kind::gaussian, sigma},
                        std::move(xi)};
}

ObservationSet binary_labels(const TargetFunction& target,
                             const SampleSet& samples, std::uint64_t rng_seed) {
  Xoshiro256pp rng(rng_seed);
  const auto n = static_cast<Eigen::Index>(samples.size());
  // The normalization grid pins the grid maximum of |eta| to 1; between nodes
  // |eta| may exceed 1 by at most the Bernstein overshoot bound, which is the
  // legitimate slack here. Anything beyond that signals broken normalization.
  const double tolerance = target.grid_overshoot_bound() + 1e-9;
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double eta = target.eval(samples[static_cast<std::size_t>(i)]);
    if (std::fabs(eta) > 1.0 + tolerance) {
      throw ProbabilityOutOfRange("binary_labels: |eta(x_i)| = " +
                                  std::to_string(std::fabs(eta)) +
                                  " exceeds 1 beyond tolerance");
    }
    const double prob_plus = std::clamp((1.0 + eta) / 2.0, 0.0, 1.0);
    y[i] = rng.uniform() < prob_plus ? 1.0 : -1.0;
  }
  return ObservationSet{samples, std::move(y),
                        NoiseModel{NoiseModel::Kind::binary, 0.0},
                        Eigen::VectorXd()};
}

double relative_l2_error(const DualWeights& weights,
                         const FourierKernel& kernel,
                         const TargetFunction& target) {
  const double norm_sq = target.l2_norm_sq();
  if (!(norm_sq > 0.0)) throw ZeroTarget("relative_l2_error: ||target|| = 0");
  const double dist = l2_distance_exact(weights, kernel, target);
  return dist * dist / norm_sq;
}

double excess_classification_risk(const DualWeights& weights,
                                  const FourierKernel& kernel,
                                  const TargetFunction& target,
                                  int grid_size) {
  if (grid_size < 1024) {
    throw InvalidParams("excess_classification_risk: grid_size must be >= 1024");
  }
  double numerator = 0.0;
  double denominator = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    const double x = (static_cast<double>(i) + 0.5) / grid_size;
    const double eta = target.eval(x);
    const double abs_eta = std::fabs(eta);
    denominator += abs_eta;
    if (sign_of(predict(weights, kernel, x)) != sign_of(eta)) {
      numerator += abs_eta;
    }
  }
  if (!(denominator > 0.0)) {
    throw ZeroTarget("excess_classification_risk: ||target||_{L1} = 0 on grid");
  }
  return numerator / denominator;
}

}  // namespace interplab
