#pragma once

#include <cstdint>

#include "interplab/kernels.hpp"
#include "interplab/samples.hpp"

namespace interplab {

/// Extreme eigenvalues of the residual Gram matrix. lambda_min is floored at
/// 1e-14 * trace so downstream ratios cannot blow up on rounding noise; the
/// raw value is kept alongside.
struct ResidualGramStats {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double lambda_min_raw = 0.0;
};

ResidualGramStats residual_gram_stats(const FourierKernel& kernel,
                                      const SampleSet& samples);

/// Spectral norm of (1/n) V^H V - I with V the top feature matrix of
/// half-bandwidth p. Zero for p = 0 (single constant feature).
double top_block_deviation(long long p, const SampleSet& samples);

/// tr_{L2}(R*R) for Fourier features: deterministic, n * 2(d-p) gamma^2,
/// since every |v_l(x)| = 1.
double trace_rstar_r(const FourierKernel& kernel, const SampleSet& samples);

/// Same trace for an explicit independent-feature ensemble:
/// sum_{l > p} lambda_l^2 ||w_l||^2.
double trace_rstar_r(const IndepGaussianFeatures& features);

/// Empirical concentration quantities feeding the deterministic bounds.
struct ConcentrationReport {
  double lambda_min_rr_star = 0.0;
  double lambda_max_rr_star = 0.0;
  double lambda_min_raw = 0.0;
  double condition = 0.0;
  double tr_rstar_r_l2 = 0.0;
  double c_value = 0.0;
  double deviation_cstar_c = 0.0;
  long long n = 0;
  long long p_count = 0;
  long long d = 0;
  std::uint64_t seed = 0;
};

/// alpha_L = alpha + lambda_min(RR*), alpha_U = alpha + lambda_max(RR*),
/// c = (alpha_U - alpha_L)/(alpha_U + alpha_L) + 2 ||(1/n) C*C - I||.
ConcentrationReport concentration_report(const FourierKernel& kernel,
                                     const SampleSet& samples, double alpha,
                                     std::uint64_t seed = 0);

}  // namespace interplab
