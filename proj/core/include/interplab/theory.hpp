#pragma once

#include <string>

#include "interplab/errors.hpp"

namespace interplab {

/// Spectral bracket alpha_L I <= alpha I + RR* <= alpha_U I together with the
/// two means the bound evaluators consume: alpha_bar (harmonic) drives the
/// bias expressions, alpha_tilde (arithmetic) the variance expression.
struct RegularizationBracket {
  double alpha_l = 0.0;
  double alpha_u = 0.0;
  double alpha_bar = 0.0;
  double alpha_tilde = 0.0;
};

RegularizationBracket bracket(double alpha_l, double alpha_u);

enum class Consistency { consistent, inconsistent, unknown };

std::string to_string(Consistency c);

/// Asymptotic classification of a (beta, r, q) parameter point. Boundary
/// cases (equalities) are reported as unknown; only strict inequalities are
/// classified. preconditions_met records beta > 2 and r < 1.
struct RegimeVerdict {
  Consistency regression = Consistency::unknown;
  Consistency classification = Consistency::unknown;
  bool preconditions_met = false;
};

RegimeVerdict regime(double beta, double r, double q);

/// Bias bound (constants set to 1):
///   min{ sqrt(l1), abar / ((1-c) n sqrt(lp)), sqrt(abar/n) / (1-c) }
///     * (1 + sqrt(n lp1 / abar)) * h_norm
double bias_bound(const RegularizationBracket& br, double n, double lambda_1,
                  double lambda_p, double lambda_p1, double c, double h_norm);

/// Variance bound (constants set to 1):
///   sigma_sq * (alpha_u/alpha_l + 1)^2 * (p_count/n + tr_RstarR / atilde^2)
double variance_bound(const RegularizationBracket& br, double n,
                      double p_count, double tr_rstar_r, double sigma_sq);

/// Refined bias estimate toward the idealized survival image:
///   (c + sqrt(n lp1 / abar)) * min{ l1, abar/(n sqrt(lp)), sqrt(abar/n) } * h_norm
double refined_bias_bound(const RegularizationBracket& br, double n,
                          double lambda_1, double lambda_p, double lambda_p1,
                          double c, double h_norm);

/// n / (alpha_bar + n): fraction of a flat-top-spectrum signal preserved by
/// the idealized estimator.
double survival_factor(double n, double alpha_bar);

/// residual_l2 / s.
double classification_upper_bound(double residual_l2, double s);

/// Condition-number lower bound for symmetric Fourier tail features:
///   n^2 (n-1)^2 / (2 pi^2 d^2 tau^2), holding with probability >= 1 - e^-tau.
double condition_lower_bound(long long n, long long d, double tau);

/// Optimal scalar approximation of the idealized survival operator over a top
/// block with extreme eigenvalues lambda_1 >= lambda_p, at bias level b.
struct Distortion {
  double s_star = 0.0;
  double objective = 0.0;  // min over s of max_l sqrt(l) |s - l/(l+b)|
};

Distortion distortion_s_star(double lambda_1, double lambda_p, double b);

/// objective / s_star.
double distortion_ratio(double lambda_1, double lambda_p, double b);

}  // namespace interplab
