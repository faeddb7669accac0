#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "ects/core/rng.hpp"
#include "ects/core/types.hpp"
#include "ects/trigger/trace.hpp"

namespace testing {

// A random distribution over k classes; `sharpness` > 1 concentrates mass.
inline std::vector<double> random_distribution(ects::Rng& rng, std::size_t k, double sharpness = 1.0) {
  std::vector<double> p(k);
  double total = 0.0;
  for (auto& v : p) {
    v = std::pow(rng.uniform() + 1e-3, sharpness);
    total += v;
  }
  for (auto& v : p) v /= total;
  return p;
}

inline ects::SampledTimeline full_timeline(ects::Timestamp T) {
  std::vector<ects::Timestamp> ts;
  for (ects::Timestamp t = 1; t <= T; ++t) ts.push_back(t);
  return ects::SampledTimeline(ts, T);
}

inline ects::ProbTrace random_trace(ects::Rng& rng, const ects::SampledTimeline& timeline, std::size_t k,
                                    ects::TraceOrigin origin = ects::TraceOrigin::Other,
                                    double sharpness = 3.0) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < timeline.size(); ++i) rows.push_back(random_distribution(rng, k, sharpness));
  return ects::ProbTrace::from_rows(timeline, rows, origin);
}

// A timeline of `count` distinct sorted timestamps in [1, T] ending at T.
inline ects::SampledTimeline random_timeline(ects::Rng& rng, std::size_t count, ects::Timestamp T) {
  std::vector<ects::Timestamp> pool;
  for (ects::Timestamp t = 1; t < T; ++t) pool.push_back(t);
  rng.shuffle(std::span(pool));
  std::vector<ects::Timestamp> ts(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count - 1));
  ts.push_back(T);
  std::sort(ts.begin(), ts.end());
  return ects::SampledTimeline(ts, T);
}

}  // namespace testing
