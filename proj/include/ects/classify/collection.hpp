#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "json.hpp"

#include "ects/classify/features.hpp"
#include "ects/classify/logistic.hpp"
#include "ects/classify/platt.hpp"
#include "ects/core/types.hpp"
#include "ects/trigger/trace.hpp"

namespace ects {

// Train-set feature means and scales (std, or 1 where the std is zero).
struct FeatureStandardizer {
  std::array<double, kFeatureCount> mean{};
  std::array<double, kFeatureCount> scale{};

  std::array<double, kFeatureCount> apply(const FeatureVector& f) const;
};

struct TimestampClassifier {
  Timestamp t = 0;
  FeatureStandardizer standardizer;
  SoftmaxModel model;
  CalibrationMap calibration;
};

// One calibrated classifier per timeline timestamp, each seeing only the
// prefix up to its timestamp.
class ChronologicalClassifierCollection {
 public:
  ChronologicalClassifierCollection(SampledTimeline timeline, std::size_t num_classes,
                                    std::vector<TimestampClassifier> classifiers);

  const SampledTimeline& timeline() const { return timeline_; }
  std::size_t num_classes() const { return num_classes_; }
  const TimestampClassifier& classifier_at(std::size_t index) const { return classifiers_[index]; }

  // Calibrated distribution over classes from values[0, t). t must be on the timeline.
  std::vector<double> predict_proba(std::span<const double> values, Timestamp t) const;

  // Softmax output before calibration.
  std::vector<double> raw_proba(std::span<const double> values, Timestamp t) const;

  ProbTrace prob_trace(std::span<const double> values,
                       TraceOrigin origin = TraceOrigin::Other) const;

  nlohmann::json to_json() const;
  static ChronologicalClassifierCollection from_json(const nlohmann::json& doc);

 private:
  std::size_t checked_index(Timestamp t) const;

  SampledTimeline timeline_;
  std::size_t num_classes_;
  std::vector<TimestampClassifier> classifiers_;
};

// Fits each timestamp's model on `train` and its calibration on
// `calibration_set`. Both sets must cover every one of `num_classes` classes.
ChronologicalClassifierCollection fit_collection(std::span<const LabeledSeries> train,
                                                 const SampledTimeline& timeline,
                                                 const LogisticHyper& hyper,
                                                 std::span<const LabeledSeries> calibration_set,
                                                 std::size_t num_classes);

// The per-class calibration score: log-odds of the softmax probability,
// logit_c - logsumexp over the other logits.
std::vector<double> one_vs_rest_scores(std::span<const double> logits);

}  // namespace ects
