#include "ects/data/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ects/core/rng.hpp"
#include "ects/error.hpp"

namespace ects {

std::vector<std::size_t> class_counts(std::span<const LabeledSeries> series,
                                      std::size_t num_classes) {
  std::vector<std::size_t> counts(num_classes, 0);
  for (const auto& s : series) {
    if (s.label >= num_classes) throw PreconditionError("class_counts: label out of range");
    ++counts[s.label];
  }
  return counts;
}

SplitParts stratified_split(std::span<const LabeledSeries> series, double fraction,
                            std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw PreconditionError("stratified_split: fraction must lie in (0, 1)");
  }
  std::size_t num_classes = 0;
  for (const auto& s : series) num_classes = std::max(num_classes, s.label + 1);
  std::vector<std::vector<std::size_t>> members(num_classes);
  for (std::size_t i = 0; i < series.size(); ++i) members[series[i].label].push_back(i);

  std::vector<bool> to_first(series.size(), false);
  const Rng root(seed);
  for (std::size_t c = 0; c < num_classes; ++c) {
    auto& idx = members[c];
    if (idx.empty()) continue;
    if (idx.size() < 2) {
      throw DataError("stratified_split: class " + std::to_string(c) +
                      " has a single member and cannot appear in both parts");
    }
    const auto wanted = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(idx.size())));
    const std::size_t take = std::clamp<std::size_t>(wanted, 1, idx.size() - 1);
    Rng rng = root.split(c);
    rng.shuffle(std::span<std::size_t>(idx));
    for (std::size_t k = 0; k < take; ++k) to_first[idx[k]] = true;
  }
  SplitParts parts;
  for (std::size_t i = 0; i < series.size(); ++i) {
    (to_first[i] ? parts.first : parts.second).push_back(series[i]);
  }
  return parts;
}

std::vector<double> znormalize(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / n);
  std::vector<double> out(values.size(), 0.0);
  if (sd == 0.0) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - mean) / sd;
  return out;
}

Dataset znormalize_dataset(const Dataset& dataset) {
  Dataset out = dataset;
  for (auto* part : {&out.train, &out.test}) {
    for (auto& s : *part) s.values = znormalize(s.values);
  }
  return out;
}

std::vector<LabeledSeries> make_imbalanced(std::span<const LabeledSeries> series,
                                           ClassLabel minority, double fraction,
                                           std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw PreconditionError("make_imbalanced: fraction must lie in (0, 1)");
  }
  std::vector<std::size_t> minority_idx;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i].label == minority) minority_idx.push_back(i);
  }
  const std::size_t current = minority_idx.size();
  const std::size_t others = series.size() - current;
  if (current == 0 || others == 0) {
    throw DataError("make_imbalanced: need members of both the minority and other classes");
  }
  if (static_cast<double>(current) / static_cast<double>(series.size()) <= fraction) {
    throw DataError("make_imbalanced: minority share is already at or below " +
                    std::to_string(fraction));
  }
  std::size_t keep = current;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t m = current; m >= 1; --m) {
    const double gap = std::abs(static_cast<double>(m) / static_cast<double>(others + m) - fraction);
    if (gap < best) {
      best = gap;
      keep = m;
    }
  }
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(minority_idx));
  std::vector<bool> dropped(series.size(), false);
  for (std::size_t k = keep; k < current; ++k) dropped[minority_idx[k]] = true;
  std::vector<LabeledSeries> out;
  out.reserve(others + keep);
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!dropped[i]) out.push_back(series[i]);
  }
  return out;
}

Dataset make_imbalanced(const Dataset& dataset, ClassLabel minority, double fraction,
                        std::uint64_t seed) {
  if (dataset.num_classes != 2) throw DataError("make_imbalanced: dataset must be binary");
  Dataset out = dataset;
  const Rng root(seed);
  out.train = make_imbalanced(dataset.train, minority, fraction, root.split("train").seed());
  out.test = make_imbalanced(dataset.test, minority, fraction, root.split("test").seed());
  return out;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw PreconditionError("quantile: empty input");
  if (!(q >= 0.0 && q <= 1.0)) throw PreconditionError("quantile: q must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<ClassLabel> discretize_regression_target(std::span<const double> values, double q) {
  if (!(q > 0.0 && q < 1.0)) throw PreconditionError("discretize: quantile must lie in (0, 1)");
  if (values.empty()) throw DataError("discretize: no values");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) throw DataError("discretize: all target values are equal");
  const double threshold = quantile(std::vector<double>(values.begin(), values.end()), q);
  std::vector<ClassLabel> labels(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) labels[i] = values[i] > threshold ? 1 : 0;
  return labels;
}

}  // namespace ects
