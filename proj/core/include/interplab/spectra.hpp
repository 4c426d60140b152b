#pragma once

#include <cstdint>
#include <vector>

#include "interplab/errors.hpp"

namespace interplab {

/// floor(base^exponent) computed robustly for exponents that are rounded
/// rationals (e.g. 1/3 stored as a double). Values within 1e-9 relative of an
/// integer snap to that integer before flooring, so floor(729^(1/3)) = 9.
long long floor_power(double base, double exponent);

/// Knobs of the two-level eigenvalue ensemble. The derived quantities are
/// fixed at construction:
///   p     = floor(n^r)            (number of unit eigenvalues, single-index)
///   d     = floor(n^beta)         (ambient feature half-bandwidth)
///   gamma = n^-(beta - r - q)     (level of the small eigenvalues)
struct BiLevelParams {
  long long n = 0;
  double beta = 0.0;
  double r = 0.0;
  double q = 0.0;

  long long p = 0;
  long long d = 0;
  double gamma = 0.0;

  /// Validates n >= 1, beta > 1, 0 < r < 1, 0 < q < beta - r, and that the
  /// derived values satisfy p >= 1, d >= p + 1, gamma in (0,1).
  static BiLevelParams create(long long n, double beta, double r, double q);
};

/// Index bookkeeping: single-index runs over 1..d; the symmetric convention
/// doubles every nonzero frequency (counts 2p+1 and 2(d-p)).
enum class Indexing { single_index, fourier_symmetric };

/// Nonincreasing positive eigenvalue sequence, either as a two-level closed
/// form (values never materialized, counts may reach ~1e9) or as an explicit
/// short list with a designated top block.
class Spectrum {
 public:
  static Spectrum bi_level(double top_value, double tail_value,
                           long long top_count, long long tail_count);
  /// `values` must be strictly positive and nonincreasing; entries beyond
  /// `top_count` form the tail.
  static Spectrum explicit_values(std::vector<double> values,
                                  long long top_count);

  bool is_bi_level() const noexcept { return explicit_.empty(); }
  long long top_count() const noexcept { return top_count_; }
  long long tail_count() const noexcept { return tail_count_; }

  /// Largest eigenvalue.
  double lambda_1() const;
  /// Smallest eigenvalue of the top block.
  double lambda_top_min() const;
  /// First tail eigenvalue (0 if the tail is empty).
  double lambda_tail_max() const;

  double top_value() const;   // bi-level only
  double tail_value() const;  // bi-level only
  const std::vector<double>& values() const { return explicit_; }

  struct Traces {
    double tail = 0.0;     // sum of tail eigenvalues
    double tail_sq = 0.0;  // sum of squared tail eigenvalues
  };
  /// Tail trace sums; closed form (count * value) for the bi-level kind.
  Traces traces() const;

 private:
  Spectrum() = default;

  double top_value_ = 0.0;
  double tail_value_ = 0.0;
  long long top_count_ = 0;
  long long tail_count_ = 0;
  std::vector<double> explicit_;
};

/// The two-level spectrum of `params` under the chosen index convention:
/// top value 1 with count p (or 2p+1), tail value gamma with count d-p
/// (or 2(d-p)).
Spectrum bilevel_spectrum(const BiLevelParams& params, Indexing indexing);

}  // namespace interplab
