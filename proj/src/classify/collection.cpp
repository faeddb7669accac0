#include "ects/classify/collection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ects/error.hpp"
#include "ects/util/parallel.hpp"

namespace ects {
namespace {

void require_all_classes(std::span<const LabeledSeries> series, std::size_t num_classes,
                         const char* what) {
  std::vector<bool> seen(num_classes, false);
  for (const auto& s : series) {
    if (s.label >= num_classes) throw DataError(std::string(what) + ": label out of range");
    seen[s.label] = true;
  }
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (!seen[c]) {
      throw DataError(std::string(what) + ": class " + std::to_string(c) + " is absent");
    }
  }
}

TimestampClassifier fit_one(std::span<const LabeledSeries> train,
                            std::span<const LabeledSeries> calibration, Timestamp t,
                            const LogisticHyper& hyper, std::size_t num_classes) {
  const std::size_t n = train.size();
  std::vector<FeatureVector> feats(n);
  for (std::size_t i = 0; i < n; ++i) feats[i] = extract_prefix_features(train[i].values, t);

  TimestampClassifier out;
  out.t = t;
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    double mean = 0.0;
    for (const auto& f : feats) mean += f.as_array()[j];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& f : feats) {
      const double d = f.as_array()[j] - mean;
      var += d * d;
    }
    const double sd = std::sqrt(var / static_cast<double>(n));
    out.standardizer.mean[j] = mean;
    out.standardizer.scale[j] = sd > 1e-12 ? sd : 1.0;
  }

  DesignMatrix x;
  x.rows = n;
  x.columns.assign(kFeatureCount, std::vector<double>(n));
  std::vector<ClassLabel> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto z = out.standardizer.apply(feats[i]);
    for (std::size_t j = 0; j < kFeatureCount; ++j) x.columns[j][i] = z[j];
    labels[i] = train[i].label;
  }
  try {
    out.model = fit_softmax(x, labels, num_classes, hyper);
  } catch (const NumericError& e) {
    throw NumericError(std::string(e.what()) + " at t=" + std::to_string(t));
  }

  std::vector<std::vector<double>> scores(num_classes, std::vector<double>(calibration.size()));
  for (std::size_t i = 0; i < calibration.size(); ++i) {
    const auto z = out.standardizer.apply(extract_prefix_features(calibration[i].values, t));
    const auto s = one_vs_rest_scores(out.model.logits(z));
    for (std::size_t c = 0; c < num_classes; ++c) scores[c][i] = s[c];
  }
  std::vector<PlattSigmoid> sigmoids;
  std::vector<bool> positive(calibration.size());
  for (std::size_t c = 0; c < num_classes; ++c) {
    for (std::size_t i = 0; i < calibration.size(); ++i) positive[i] = calibration[i].label == c;
    try {
      sigmoids.push_back(fit_platt(scores[c], positive));
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " at t=" + std::to_string(t));
    }
  }
  out.calibration = CalibrationMap(std::move(sigmoids));
  return out;
}

}  // namespace

std::array<double, kFeatureCount> FeatureStandardizer::apply(const FeatureVector& f) const {
  auto v = f.as_array();
  for (std::size_t j = 0; j < kFeatureCount; ++j) v[j] = (v[j] - mean[j]) / scale[j];
  return v;
}

std::vector<double> one_vs_rest_scores(std::span<const double> logits) {
  std::vector<double> out(logits.size());
  for (std::size_t c = 0; c < logits.size(); ++c) {
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < logits.size(); ++j) {
      if (j != c) peak = std::max(peak, logits[j]);
    }
    double total = 0.0;
    for (std::size_t j = 0; j < logits.size(); ++j) {
      if (j != c) total += std::exp(logits[j] - peak);
    }
    out[c] = logits[c] - (peak + std::log(total));
  }
  return out;
}

ChronologicalClassifierCollection::ChronologicalClassifierCollection(
    SampledTimeline timeline, std::size_t num_classes, std::vector<TimestampClassifier> classifiers)
    : timeline_(std::move(timeline)), num_classes_(num_classes), classifiers_(std::move(classifiers)) {
  if (classifiers_.size() != timeline_.size()) {
    throw PreconditionError("collection: one classifier per timestamp required");
  }
  for (std::size_t i = 0; i < classifiers_.size(); ++i) {
    const auto& c = classifiers_[i];
    if (c.t != timeline_[i] || c.model.num_classes() != num_classes_ ||
        c.calibration.sigmoids().size() != num_classes_ || c.model.num_features() != kFeatureCount) {
      throw PreconditionError("collection: classifier " + std::to_string(i) +
                              " does not match the timeline or class count");
    }
  }
}

std::size_t ChronologicalClassifierCollection::checked_index(Timestamp t) const {
  const auto index = timeline_.index_of(t);
  if (!index) throw PreconditionError("predict_proba: t=" + std::to_string(t) + " is not on the timeline");
  return *index;
}

std::vector<double> ChronologicalClassifierCollection::raw_proba(std::span<const double> values,
                                                                 Timestamp t) const {
  const auto& c = classifiers_[checked_index(t)];
  return c.model.proba(c.standardizer.apply(extract_prefix_features(values, t)));
}

std::vector<double> ChronologicalClassifierCollection::predict_proba(std::span<const double> values,
                                                                     Timestamp t) const {
  const auto& c = classifiers_[checked_index(t)];
  const auto logits = c.model.logits(c.standardizer.apply(extract_prefix_features(values, t)));
  return c.calibration.apply(one_vs_rest_scores(logits));
}

ProbTrace ChronologicalClassifierCollection::prob_trace(std::span<const double> values,
                                                        TraceOrigin origin) const {
  if (static_cast<Timestamp>(values.size()) != timeline_.series_length()) {
    throw PreconditionError("prob_trace: series length does not match the timeline");
  }
  std::vector<double> flat;
  flat.reserve(timeline_.size() * num_classes_);
  for (Timestamp t : timeline_.timestamps()) {
    const auto p = predict_proba(values, t);
    flat.insert(flat.end(), p.begin(), p.end());
  }
  return ProbTrace(timeline_, num_classes_, std::move(flat), origin);
}

nlohmann::json ChronologicalClassifierCollection::to_json() const {
  nlohmann::ordered_json doc;
  doc["num_classes"] = num_classes_;
  doc["timeline"] = {{"timestamps", std::vector<Timestamp>(timeline_.timestamps().begin(),
                                                           timeline_.timestamps().end())},
                     {"series_length", timeline_.series_length()}};
  auto& list = doc["classifiers"] = nlohmann::ordered_json::array();
  for (const auto& c : classifiers_) {
    nlohmann::ordered_json item;
    item["t"] = c.t;
    item["feature_stats"] = {{"mean", c.standardizer.mean}, {"scale", c.standardizer.scale}};
    item["weights"] = std::vector<double>(c.model.weights().begin(), c.model.weights().end());
    item["intercepts"] = std::vector<double>(c.model.intercepts().begin(), c.model.intercepts().end());
    auto& platt = item["platt"] = nlohmann::ordered_json::array();
    for (const auto& s : c.calibration.sigmoids()) platt.push_back({{"a", s.a}, {"b", s.b}});
    list.push_back(std::move(item));
  }
  return nlohmann::json(doc);
}

ChronologicalClassifierCollection ChronologicalClassifierCollection::from_json(const nlohmann::json& doc) {
  try {
    const auto num_classes = doc.at("num_classes").get<std::size_t>();
    SampledTimeline timeline(doc.at("timeline").at("timestamps").get<std::vector<Timestamp>>(),
                             doc.at("timeline").at("series_length").get<Timestamp>());
    std::vector<TimestampClassifier> classifiers;
    for (const auto& item : doc.at("classifiers")) {
      TimestampClassifier c;
      c.t = item.at("t").get<Timestamp>();
      c.standardizer.mean = item.at("feature_stats").at("mean").get<std::array<double, kFeatureCount>>();
      c.standardizer.scale = item.at("feature_stats").at("scale").get<std::array<double, kFeatureCount>>();
      c.model = SoftmaxModel(num_classes, kFeatureCount, item.at("weights").get<std::vector<double>>(),
                             item.at("intercepts").get<std::vector<double>>());
      std::vector<PlattSigmoid> sigmoids;
      for (const auto& s : item.at("platt")) sigmoids.push_back({s.at("a").get<double>(), s.at("b").get<double>()});
      c.calibration = CalibrationMap(std::move(sigmoids));
      classifiers.push_back(std::move(c));
    }
    return ChronologicalClassifierCollection(std::move(timeline), num_classes, std::move(classifiers));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("collection json: ") + e.what());
  }
}

ChronologicalClassifierCollection fit_collection(std::span<const LabeledSeries> train,
                                                 const SampledTimeline& timeline,
                                                 const LogisticHyper& hyper,
                                                 std::span<const LabeledSeries> calibration_set,
                                                 std::size_t num_classes) {
  require_all_classes(train, num_classes, "fit_collection train set");
  require_all_classes(calibration_set, num_classes, "fit_collection calibration set");
  for (const auto* part : {&train, &calibration_set}) {
    for (const auto& s : *part) {
      if (static_cast<Timestamp>(s.values.size()) != timeline.series_length()) {
        throw DataError("fit_collection: series '" + s.id + "' does not match the timeline length");
      }
    }
  }
  std::vector<TimestampClassifier> classifiers(timeline.size());
  parallel_for(timeline.size(), [&](std::size_t i) {
    classifiers[i] = fit_one(train, calibration_set, timeline[i], hyper, num_classes);
  });
  return ChronologicalClassifierCollection(timeline, num_classes, std::move(classifiers));
}

}  // namespace ects
