#include "ects/classify/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ects/error.hpp"
#include "ects/simd/kernels.hpp"

namespace ects {

FeatureVector extract_prefix_features(std::span<const double> values, Timestamp t) {
  if (t < 1 || static_cast<std::size_t>(t) > values.size()) {
    throw PreconditionError("extract_prefix_features: t=" + std::to_string(t) + " outside [1, " +
                            std::to_string(values.size()) + "]");
  }
  const auto prefix = values.first(static_cast<std::size_t>(t));
  const double n = static_cast<double>(prefix.size());

  FeatureVector f;
  f.mean = simd::sum(prefix) / n;
  double var = 0.0;
  double cov = 0.0;
  const double center = (n - 1.0) / 2.0;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const double d = prefix[i] - f.mean;
    var += d * d;
    cov += (static_cast<double>(i) - center) * d;
  }
  f.std = std::sqrt(var / n);
  // sum of (i - center)^2 over i = 0..n-1
  const double index_ss = n * (n * n - 1.0) / 12.0;
  f.slope = prefix.size() > 1 ? cov / index_ss : 0.0;
  const auto [lo, hi] = std::minmax_element(prefix.begin(), prefix.end());
  f.min = *lo;
  f.max = *hi;
  f.last = prefix.back();
  if (prefix.size() > 1) {
    double total = 0.0;
    for (std::size_t i = 1; i < prefix.size(); ++i) total += std::abs(prefix[i] - prefix[i - 1]);
    f.mean_abs_diff = total / (n - 1.0);
  }
  return f;
}

SampledTimeline default_timeline(Timestamp series_length, std::size_t count) {
  if (series_length < 2) throw PreconditionError("default_timeline: T must be at least 2");
  if (count < 1) throw PreconditionError("default_timeline: count must be at least 1");
  std::vector<Timestamp> ts;
  for (std::size_t i = 1; i <= count; ++i) {
    const double raw = static_cast<double>(i) * series_length / static_cast<double>(count);
    const auto t = std::clamp<Timestamp>(static_cast<Timestamp>(std::llround(raw)), 1, series_length);
    if (ts.empty() || ts.back() < t) ts.push_back(t);
  }
  if (ts.back() != series_length) ts.push_back(series_length);
  return SampledTimeline(std::move(ts), series_length);
}

}  // namespace ects
