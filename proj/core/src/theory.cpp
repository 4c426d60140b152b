#include "interplab/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace interplab {

RegularizationBracket bracket(double alpha_l, double alpha_u) {
  if (!(alpha_l > 0.0) || alpha_u < alpha_l) {
    throw InvalidBracket("bracket: need 0 < alpha_l <= alpha_u");
  }
  RegularizationBracket br;
  br.alpha_l = alpha_l;
  br.alpha_u = alpha_u;
  br.alpha_bar = 2.0 * alpha_u * alpha_l / (alpha_u + alpha_l);
  br.alpha_tilde = (alpha_u + alpha_l) / 2.0;
  return br;
}

std::string to_string(Consistency c) {
  switch (c) {
    case Consistency::consistent:
      return "Consistent";
    case Consistency::inconsistent:
      return "Inconsistent";
    default:
      return "Unknown";
  }
}

RegimeVerdict regime(double beta, double r, double q) {
  RegimeVerdict v;
  v.preconditions_met = beta > 2.0 && r < 1.0;
  if (q < 1.0 - r) {
    v.regression = Consistency::consistent;
    v.classification = Consistency::consistent;
    return v;
  }
  if (q > 1.0 - r) {
    v.regression = Consistency::inconsistent;
    if (q < 1.5 * (1.0 - r) && beta > 2.0 * (r + q)) {
      v.classification = Consistency::consistent;
    }
    return v;
  }
  // q == 1 - r exactly: the analysis covers strict inequalities only.
  return v;
}

double bias_bound(const RegularizationBracket& br, double n, double lambda_1,
                  double lambda_p, double lambda_p1, double c, double h_norm) {
  if (!(c >= 0.0 && c < 1.0)) throw InvalidParams("bias_bound: c must be in [0,1)");
  if (!(lambda_1 > 0.0 && lambda_p > 0.0) || lambda_p1 < 0.0) {
    throw InvalidParams("bias_bound: eigenvalues out of range");
  }
  const double inv = 1.0 / (1.0 - c);
  const double level =
      std::min({std::sqrt(lambda_1),
                inv * br.alpha_bar / (n * std::sqrt(lambda_p)),
                inv * std::sqrt(br.alpha_bar / n)});
  return level * (1.0 + std::sqrt(n * lambda_p1 / br.alpha_bar)) * h_norm;
}

double variance_bound(const RegularizationBracket& br, double n,
                      double p_count, double tr_rstar_r, double sigma_sq) {
  if (n < 1.0 || p_count < 0.0 || tr_rstar_r < 0.0 || sigma_sq < 0.0) {
    throw InvalidParams("variance_bound: inputs must be nonnegative, n >= 1");
  }
  const double ratio = br.alpha_u / br.alpha_l + 1.0;
  return sigma_sq * ratio * ratio *
         (p_count / n + tr_rstar_r / (br.alpha_tilde * br.alpha_tilde));
}

double refined_bias_bound(const RegularizationBracket& br, double n,
                          double lambda_1, double lambda_p, double lambda_p1,
                          double c, double h_norm) {
  if (!(c >= 0.0 && c < 1.0)) {
    throw InvalidParams("refined_bias_bound: c must be in [0,1)");
  }
  if (!(lambda_1 > 0.0 && lambda_p > 0.0) || lambda_p1 < 0.0) {
    throw InvalidParams("refined_bias_bound: eigenvalues out of range");
  }
  const double level = std::min({lambda_1,
                                 br.alpha_bar / (n * std::sqrt(lambda_p)),
                                 std::sqrt(br.alpha_bar / n)});
  return (c + std::sqrt(n * lambda_p1 / br.alpha_bar)) * level * h_norm;
}

double survival_factor(double n, double alpha_bar) {
  if (n < 1.0 || alpha_bar < 0.0) {
    throw InvalidParams("survival_factor: need n >= 1, alpha_bar >= 0");
  }
  return n / (alpha_bar + n);
}

double classification_upper_bound(double residual_l2, double s) {
  if (residual_l2 < 0.0) {
    throw InvalidParams("classification_upper_bound: residual < 0");
  }
  if (!(s > 0.0)) {
    throw DegenerateSurvival("classification_upper_bound: s must be > 0");
  }
  return residual_l2 / s;
}

double condition_lower_bound(long long n, long long d, double tau) {
  if (n < 2 || d < 1 || !(tau > 0.0)) {
    throw InvalidParams("condition_lower_bound: need n >= 2, d >= 1, tau > 0");
  }
  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  const double pi = std::numbers::pi;
  return nd * nd * (nd - 1.0) * (nd - 1.0) / (2.0 * pi * pi * dd * dd * tau * tau);
}

namespace {

// s minimizing max over {lambda, lambda_1}, and the attained value, for a
// fixed pair of eigenvalues.
Distortion two_point_distortion(double lambda_1, double lambda, double b) {
  Distortion d;
  d.s_star = (lambda * lambda_1 +
              b * (lambda + lambda_1 - std::sqrt(lambda * lambda_1))) /
             ((b + lambda) * (b + lambda_1));
  d.objective = b * std::sqrt(lambda * lambda_1) *
                (std::sqrt(lambda_1) - std::sqrt(lambda)) /
                ((b + lambda_1) * (b + lambda));
  return d;
}

}  // namespace

Distortion distortion_s_star(double lambda_1, double lambda_p, double b) {
  if (!(lambda_p > 0.0) || lambda_p > lambda_1) {
    throw InvalidEigen("distortion: need 0 < lambda_p <= lambda_1");
  }
  if (!(b > 0.0)) throw InvalidParams("distortion: b must be > 0");
  const double root = 1.0 + std::sqrt(1.0 + lambda_1 / b);
  const double lambda_crit = lambda_1 / (root * root);
  // Below lambda_crit the worst distortion over the top block is attained at
  // an interior eigenvalue; the continuous optimum gives the upper bound.
  const double lambda_eff = std::max(lambda_p, lambda_crit);
  return two_point_distortion(lambda_1, lambda_eff, b);
}

double distortion_ratio(double lambda_1, double lambda_p, double b) {
  const Distortion d = distortion_s_star(lambda_1, lambda_p, b);
  return d.objective / d.s_star;
}

}  // namespace interplab
