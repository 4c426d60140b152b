#include "interplab/target.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace interplab {

namespace {
constexpr double kPi = std::numbers::pi;
}

TargetFunction::TargetFunction(Eigen::VectorXcd coefficients,
                               int normalization_grid_size)
    : coeffs_(std::move(coefficients)), grid_size_(normalization_grid_size) {
  if (coeffs_.size() % 2 == 0 || coeffs_.size() < 1) {
    throw InvalidParams("target: coefficient count must be odd (l = -p..p)");
  }
  if (grid_size_ < 1) throw InvalidParams("target: grid size must be >= 1");
  p_ = (coeffs_.size() - 1) / 2;
  for (long long l = 0; l <= p_; ++l) {
    const auto plus = coeffs_[static_cast<Eigen::Index>(p_ + l)];
    const auto minus = coeffs_[static_cast<Eigen::Index>(p_ - l)];
    if (std::abs(plus - std::conj(minus)) >
        1e-12 * std::max(1.0, std::abs(plus))) {
      throw InvalidParams("target: coefficients not conjugate-symmetric");
    }
  }
}

double TargetFunction::eval(double x) const {
  const std::complex<double> step = std::polar(1.0, 2.0 * kPi * x);
  std::complex<double> rotation = step;
  double value = coeffs_[static_cast<Eigen::Index>(p_)].real();
  for (long long l = 1; l <= p_; ++l) {
    value += 2.0 * (coeffs_[static_cast<Eigen::Index>(p_ + l)] * rotation).real();
    rotation *= step;
  }
  return value;
}

double TargetFunction::l2_norm_sq() const {
  return coeffs_.squaredNorm();
}

double TargetFunction::grid_overshoot_bound() const {
  const double ratio = kPi * static_cast<double>(p_) / grid_size_;
  const double raw = ratio * ratio / 2.0;
  if (raw >= 0.5) return 1.0;  // grid far too coarse; effectively no bound
  return raw / (1.0 - raw);
}

TargetFunction generate_target(long long p, std::uint64_t rng_seed) {
  if (p < 0) throw InvalidParams("generate_target: p must be >= 0");
  Xoshiro256pp rng(rng_seed);
  Eigen::VectorXcd coeffs(static_cast<Eigen::Index>(2 * p + 1));
  coeffs[static_cast<Eigen::Index>(p)] = std::complex<double>(rng.normal(), 0.0);
  for (long long l = 1; l <= p; ++l) {
    const std::complex<double> c(rng.normal(), rng.normal());
    coeffs[static_cast<Eigen::Index>(p + l)] = c;
    coeffs[static_cast<Eigen::Index>(p - l)] = std::conj(c);
  }

  const int grid =
      std::max<long long>(4096, 32 * (2 * p + 1)) > 1 << 30
          ? (1 << 30)
          : static_cast<int>(std::max<long long>(4096, 32 * (2 * p + 1)));
  TargetFunction unscaled(coeffs, grid);
  double max_abs = 0.0;
  for (int i = 0; i < grid; ++i) {
    max_abs = std::max(max_abs,
                       std::fabs(unscaled.eval(static_cast<double>(i) / grid)));
  }
  if (max_abs == 0.0) {
    // Essentially impossible for normal draws; keep the all-zero guard anyway.
    coeffs[static_cast<Eigen::Index>(p)] = 1.0;
    return TargetFunction(coeffs, grid);
  }
  return TargetFunction(coeffs / max_abs, grid);
}

}  // namespace interplab
