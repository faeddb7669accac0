#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ects/core/types.hpp"
#include "ects/data/dataset.hpp"

namespace ects {

struct SplitSpec {
  double classifier_fraction = 0.4;
  double calibration_fraction = 0.3;  // of the classifier part
  std::uint64_t seed = 0;
};

struct SplitParts {
  std::vector<LabeledSeries> first;
  std::vector<LabeledSeries> second;
};

// Per class, round(fraction * count) members (clamped to [1, count - 1]) go
// to `first`, chosen by a seeded shuffle; the rest go to `second`. Both parts
// keep the input order. Every class needs at least two members.
SplitParts stratified_split(std::span<const LabeledSeries> series, double fraction,
                            std::uint64_t seed);

// Per-class member counts, indexed by label, sized to num_classes.
std::vector<std::size_t> class_counts(std::span<const LabeledSeries> series,
                                      std::size_t num_classes);

// Full-series z-normalization with population std; constant input maps to zeros.
std::vector<double> znormalize(std::span<const double> values);

// z-normalizes every train and test series.
Dataset znormalize_dataset(const Dataset& dataset);

// Subsamples `minority` so its share of the series is as close as possible
// to `fraction` (ties keep more members). Other classes are untouched and the
// input order is kept. Throws DataError if the share is already <= fraction.
std::vector<LabeledSeries> make_imbalanced(std::span<const LabeledSeries> series,
                                           ClassLabel minority, double fraction,
                                           std::uint64_t seed);

// Applies make_imbalanced to train and test with independent sub-seeds.
// Requires a binary dataset.
Dataset make_imbalanced(const Dataset& dataset, ClassLabel minority, double fraction,
                        std::uint64_t seed);

// Linear-interpolation quantile (Hyndman-Fan type 7). q in [0, 1].
double quantile(std::vector<double> values, double q);

// Label 1 iff value > quantile(values, q). Constant input is an error.
std::vector<ClassLabel> discretize_regression_target(std::span<const double> values, double q);

}  // namespace ects
