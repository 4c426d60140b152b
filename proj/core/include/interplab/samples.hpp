#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "interplab/errors.hpp"
#include "interplab/rng.hpp"

namespace interplab {

/// Sample locations on the unit circle [0, 1). Immutable after construction.
class SampleSet {
 public:
  SampleSet() = default;

  explicit SampleSet(std::vector<double> locations) : x_(std::move(locations)) {
    for (double xi : x_) {
      if (!(xi >= 0.0 && xi < 1.0)) {
        throw InvalidParams("sample location outside [0,1)");
      }
    }
  }

  std::size_t size() const noexcept { return x_.size(); }
  double operator[](std::size_t i) const noexcept { return x_[i]; }
  const std::vector<double>& locations() const noexcept { return x_; }

 private:
  std::vector<double> x_;
};

inline SampleSet draw_uniform_samples(std::size_t n, Xoshiro256pp& rng) {
  std::vector<double> x(n);
  for (auto& xi : x) xi = rng.uniform();
  return SampleSet(std::move(x));
}

}  // namespace interplab
