#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>

#include "interplab/estimator.hpp"
#include "interplab/samples.hpp"
#include "interplab/target.hpp"

namespace interplab {

/// Observation model tag. Gaussian: y_i = eta(x_i) + sigma g_i.
/// Binary: y_i in {-1,+1} with P(y_i = +1) = (1 + eta(x_i)) / 2.
struct NoiseModel {
  enum class Kind { gaussian, binary };
  Kind kind = Kind::gaussian;
  double sigma = 1.0;  // meaningful for gaussian only
};

struct ObservationSet {
  SampleSet samples;
  Eigen::VectorXd y;
  NoiseModel model;
  Eigen::VectorXd xi;  // gaussian noise as drawn; empty for binary labels
};

ObservationSet gaussian_observations(const TargetFunction& target,
                                     const SampleSet& samples, double sigma,
                                     std::uint64_t rng_seed);

ObservationSet binary_labels(const TargetFunction& target,
                             const SampleSet& samples, std::uint64_t rng_seed);

/// ||target - estimate||^2_{L2} / ||target||^2_{L2}, both via the exact
/// second-moment geometry.
double relative_l2_error(const DualWeights& weights,
                         const FourierKernel& kernel,
                         const TargetFunction& target);

/// Midpoint-rule quadrature of
///   integral |eta(x)| 1{sign(estimate(x)) != sign(eta(x))} dx
/// divided by integral |eta|. sign(0) is +1 so the value is deterministic.
double excess_classification_risk(const DualWeights& weights,
                                  const FourierKernel& kernel,
                                  const TargetFunction& target, int grid_size);

/// Diagnostics attached to a trial when concentration reporting is enabled.
struct TrialDiagnostics {
  double cond_rr_star = 0.0;
  double c_value = 0.0;
};

/// Per-trial outcome of the sweep pipeline.
struct RiskRecord {
  std::string mode;  // "gaussian" or "binary"
  long long n = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  double rel_l2_error = 0.0;
  double rel_excess_risk = 0.0;
  std::optional<TrialDiagnostics> diagnostics;
  int resamples = 0;
  double wall_ms = 0.0;
};

}  // namespace interplab
