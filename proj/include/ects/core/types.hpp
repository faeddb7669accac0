#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ects {

using ClassLabel = std::size_t;
using Timestamp = int;

// One fixed-length univariate series with its class index.
struct LabeledSeries {
  std::string id;
  std::vector<double> values;
  ClassLabel label = 0;

  std::size_t length() const { return values.size(); }
};

// Throws DataError unless the series has length >= 2, finite values and
// label < num_classes.
void validate_series(const LabeledSeries& series, std::size_t num_classes);

// The decision timestamps: strictly increasing integers in [1, T] ending at T.
class SampledTimeline {
 public:
  SampledTimeline(std::vector<Timestamp> timestamps, Timestamp series_length);

  std::span<const Timestamp> timestamps() const { return timestamps_; }
  Timestamp series_length() const { return series_length_; }
  std::size_t size() const { return timestamps_.size(); }
  Timestamp operator[](std::size_t index) const { return timestamps_[index]; }
  Timestamp last() const { return timestamps_.back(); }
  std::size_t last_index() const { return timestamps_.size() - 1; }

  std::optional<std::size_t> index_of(Timestamp t) const;

  bool operator==(const SampledTimeline&) const = default;

 private:
  std::vector<Timestamp> timestamps_;
  Timestamp series_length_;
};

// Outcome of the online process: the class predicted and when.
struct Decision {
  ClassLabel predicted_label = 0;
  Timestamp trigger_time = 0;
  std::size_t trigger_index = 0;
};

// The atom of all reports.
struct EvalRecord {
  std::string dataset;
  std::string method;
  double alpha = 0.0;
  std::string series_id;
  ClassLabel true_label = 0;
  ClassLabel predicted_label = 0;
  Timestamp trigger_time = 0;
  std::size_t trigger_index = 0;  // position of trigger_time on the timeline
  Timestamp series_length = 0;
  double weighted_cost = 0.0;
  double misclassification_cost = 0.0;
  double delay_cost = 0.0;
  Timestamp oracle_time = 0;
  double oracle_cost = 0.0;
  double regret = 0.0;
};

}  // namespace ects
