#include "ects/core/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ects/error.hpp"

namespace ects {

void validate_series(const LabeledSeries& series, std::size_t num_classes) {
  if (series.values.size() < 2) {
    throw DataError("series '" + series.id + "': length must be at least 2");
  }
  if (series.label >= num_classes) {
    throw DataError("series '" + series.id + "': label " + std::to_string(series.label) +
                    " is not below the class count " + std::to_string(num_classes));
  }
  for (double v : series.values) {
    if (!std::isfinite(v)) throw DataError("series '" + series.id + "': non-finite value");
  }
}

SampledTimeline::SampledTimeline(std::vector<Timestamp> timestamps, Timestamp series_length)
    : timestamps_(std::move(timestamps)), series_length_(series_length) {
  if (timestamps_.empty()) throw PreconditionError("timeline: no timestamps");
  if (timestamps_.back() != series_length_) {
    throw PreconditionError("timeline: last timestamp must equal the series length");
  }
  for (std::size_t i = 0; i < timestamps_.size(); ++i) {
    if (timestamps_[i] < 1 || timestamps_[i] > series_length_) {
      throw PreconditionError("timeline: timestamp outside [1, T]");
    }
    if (i > 0 && timestamps_[i] <= timestamps_[i - 1]) {
      throw PreconditionError("timeline: timestamps must be strictly increasing");
    }
  }
}

std::optional<std::size_t> SampledTimeline::index_of(Timestamp t) const {
  const auto it = std::lower_bound(timestamps_.begin(), timestamps_.end(), t);
  if (it == timestamps_.end() || *it != t) return std::nullopt;
  return static_cast<std::size_t>(it - timestamps_.begin());
}

}  // namespace ects
