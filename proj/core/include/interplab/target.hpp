#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "interplab/errors.hpp"
#include "interplab/rng.hpp"

namespace interplab {

/// Real trigonometric polynomial eta(x) = sum_{l=-p}^{p} c_l exp(j 2 pi l x)
/// with conjugate-symmetric coefficients, scaled so that the maximum of
/// |eta| over the normalization grid equals 1.
class TargetFunction {
 public:
  /// `coefficients` holds c_l for l = -p..p (index l+p) and must be
  /// conjugate-symmetric: c_{-l} = conj(c_l).
  TargetFunction(Eigen::VectorXcd coefficients, int normalization_grid_size);

  long long degree() const noexcept { return p_; }
  int normalization_grid_size() const noexcept { return grid_size_; }
  const Eigen::VectorXcd& coefficients() const noexcept { return coeffs_; }

  /// Real value; the conjugate-symmetric expansion is summed as
  /// c_0 + 2 Re sum_{l=1}^{p} c_l exp(j 2 pi l x).
  double eval(double x) const;

  /// Parseval: sum over l = -p..p of |c_l|^2.
  double l2_norm_sq() const;

  /// Bernstein bound on how far |eta| can exceed 1 between the normalization
  /// grid nodes: pi^2 p^2 / (2 G^2) up to the usual geometric correction.
  double grid_overshoot_bound() const;

 private:
  Eigen::VectorXcd coeffs_;  // c_{-p} .. c_p
  long long p_ = 0;
  int grid_size_ = 0;
};

/// Draws c_0 real standard normal and c_l (1 <= l <= p) complex standard
/// normal (independent real/imaginary parts), mirrors by conjugation, then
/// rescales so the grid maximum of |eta| is exactly 1. The grid has
/// max(4096, 32 (2p+1)) uniform points. Deterministic given the seed.
TargetFunction generate_target(long long p, std::uint64_t rng_seed);

}  // namespace interplab
