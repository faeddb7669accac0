#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "ects/core/types.hpp"

namespace ects {

inline constexpr std::size_t kFeatureCount = 7;

// Summary statistics of a series prefix.
struct FeatureVector {
  double mean = 0.0;
  double std = 0.0;  // population
  double slope = 0.0;  // least squares against the sample index; 0 for one point
  double min = 0.0;
  double max = 0.0;
  double last = 0.0;
  double mean_abs_diff = 0.0;  // 0 for one point

  std::array<double, kFeatureCount> as_array() const {
    return {mean, std, slope, min, max, last, mean_abs_diff};
  }
};

// Statistics over values[0, t). Requires 1 <= t <= values.size().
FeatureVector extract_prefix_features(std::span<const double> values, Timestamp t);

// round(i * T / count) for i = 1..count, clamped to [1, T] and deduplicated.
SampledTimeline default_timeline(Timestamp series_length, std::size_t count = 20);

}  // namespace ects
