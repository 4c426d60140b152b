#include "interplab/spectra.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace interplab {

long long floor_power(double base, double exponent) {
  if (!(base > 0.0) || !std::isfinite(exponent)) {
    throw InvalidParams("floor_power requires base > 0 and finite exponent");
  }
  const double value = std::pow(base, exponent);
  if (!(value >= 0.0) ||
      value >= static_cast<double>(std::numeric_limits<long long>::max())) {
    throw InvalidParams("floor_power result out of range");
  }
  const double nearest = std::round(value);
  // Exponents like 1/3 carry ~1e-16 relative representation error, which can
  // push an exact integer power just below the integer. Snap within 1e-9
  // relative before flooring.
  if (std::abs(value - nearest) <= 1e-9 * std::max(1.0, std::abs(value))) {
    return static_cast<long long>(nearest);
  }
  return static_cast<long long>(std::floor(value));
}

BiLevelParams BiLevelParams::create(long long n, double beta, double r,
                                    double q) {
  if (n < 1) throw InvalidParams("bi-level: n must be >= 1");
  if (!(beta > 1.0)) throw InvalidParams("bi-level: beta must be > 1");
  if (!(r > 0.0 && r < 1.0)) throw InvalidParams("bi-level: r must be in (0,1)");
  if (!(q > 0.0 && q < beta - r)) {
    throw InvalidParams("bi-level: q must be in (0, beta - r)");
  }
  BiLevelParams out;
  out.n = n;
  out.beta = beta;
  out.r = r;
  out.q = q;
  out.p = floor_power(static_cast<double>(n), r);
  out.d = floor_power(static_cast<double>(n), beta);
  out.gamma = std::pow(static_cast<double>(n), -(beta - r - q));
  if (out.p < 1) throw InvalidParams("bi-level: derived p < 1");
  if (out.d < out.p + 1) throw InvalidParams("bi-level: derived d < p + 1");
  if (!(out.gamma > 0.0 && out.gamma < 1.0)) {
    throw InvalidParams("bi-level: derived gamma outside (0,1)");
  }
  return out;
}

Spectrum Spectrum::bi_level(double top_value, double tail_value,
                            long long top_count, long long tail_count) {
  if (!(tail_value > 0.0) || !(top_value >= tail_value)) {
    throw InvalidParams("spectrum: need top_value >= tail_value > 0");
  }
  if (top_count < 1 || tail_count < 1) {
    throw InvalidParams("spectrum: counts must be >= 1");
  }
  Spectrum s;
  s.top_value_ = top_value;
  s.tail_value_ = tail_value;
  s.top_count_ = top_count;
  s.tail_count_ = tail_count;
  return s;
}

Spectrum Spectrum::explicit_values(std::vector<double> values,
                                   long long top_count) {
  if (values.empty()) throw InvalidParams("spectrum: empty value list");
  if (top_count < 0 || top_count > static_cast<long long>(values.size())) {
    throw InvalidParams("spectrum: top_count out of range");
  }
  if (!(values.front() > 0.0)) {
    throw InvalidParams("spectrum: leading eigenvalue must be positive");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    // zeros are allowed in the tail (absent features); negatives are not
    if (!(values[i] >= 0.0)) {
      throw InvalidParams("spectrum: eigenvalues must be nonnegative");
    }
    if (i > 0 && values[i] > values[i - 1]) {
      throw InvalidParams("spectrum: eigenvalues must be nonincreasing");
    }
  }
  Spectrum s;
  s.top_count_ = top_count;
  s.tail_count_ = static_cast<long long>(values.size()) - top_count;
  s.explicit_ = std::move(values);
  return s;
}

double Spectrum::lambda_1() const {
  return is_bi_level() ? top_value_ : explicit_.front();
}

double Spectrum::lambda_top_min() const {
  if (top_count_ == 0) return 0.0;
  return is_bi_level() ? top_value_
                       : explicit_[static_cast<std::size_t>(top_count_ - 1)];
}

double Spectrum::lambda_tail_max() const {
  if (tail_count_ == 0) return 0.0;
  return is_bi_level() ? tail_value_
                       : explicit_[static_cast<std::size_t>(top_count_)];
}

double Spectrum::top_value() const {
  if (!is_bi_level()) throw InvalidParams("top_value: not a bi-level spectrum");
  return top_value_;
}

double Spectrum::tail_value() const {
  if (!is_bi_level()) throw InvalidParams("tail_value: not a bi-level spectrum");
  return tail_value_;
}

Spectrum::Traces Spectrum::traces() const {
  Traces t;
  if (is_bi_level()) {
    t.tail = static_cast<double>(tail_count_) * tail_value_;
    t.tail_sq = static_cast<double>(tail_count_) * tail_value_ * tail_value_;
  } else {
    for (long long i = top_count_; i < top_count_ + tail_count_; ++i) {
      const double v = explicit_[static_cast<std::size_t>(i)];
      t.tail += v;
      t.tail_sq += v * v;
    }
  }
  return t;
}

Spectrum bilevel_spectrum(const BiLevelParams& params, Indexing indexing) {
  const long long top = indexing == Indexing::single_index
                            ? params.p
                            : 2 * params.p + 1;
  const long long tail = indexing == Indexing::single_index
                             ? params.d - params.p
                             : 2 * (params.d - params.p);
  return Spectrum::bi_level(1.0, params.gamma, top, tail);
}

}  // namespace interplab
