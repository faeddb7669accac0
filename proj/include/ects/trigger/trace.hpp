#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ects/core/types.hpp"

namespace ects {

// Where a trace came from. Trigger fitting only accepts TriggerTrain traces,
// which is how the pipeline proves test traces never reach a fit.
enum class TraceOrigin { TriggerTrain, Test, Other };

// Calibrated class-probability vectors of one series, one per timeline index.
class ProbTrace {
 public:
  // `probs` is row-major, timeline.size() x num_classes. Each row must be a
  // distribution (components in [0, 1], sum 1 within 1e-6).
  ProbTrace(SampledTimeline timeline, std::size_t num_classes, std::vector<double> probs,
            TraceOrigin origin = TraceOrigin::Other);

  // Convenience for tests: one inner vector per timestamp.
  static ProbTrace from_rows(SampledTimeline timeline, const std::vector<std::vector<double>>& rows,
                             TraceOrigin origin = TraceOrigin::Other);

  const SampledTimeline& timeline() const { return timeline_; }
  std::size_t size() const { return timeline_.size(); }
  std::size_t num_classes() const { return num_classes_; }
  TraceOrigin origin() const { return origin_; }

  std::span<const double> row(std::size_t index) const {
    return {probs_.data() + index * num_classes_, num_classes_};
  }

  ProbTrace with_origin(TraceOrigin origin) const;

 private:
  SampledTimeline timeline_;
  std::size_t num_classes_;
  std::vector<double> probs_;
  TraceOrigin origin_;
};

// Index of the largest component; the first one on ties.
ClassLabel argmax(std::span<const double> probs);

// Largest component and its gap to the second largest.
struct TopTwo {
  double largest;
  double margin;
};
TopTwo top_two(std::span<const double> probs);

// Counts how far into a trace a policy looked.
struct AccessProbe {
  std::size_t reads = 0;
  std::size_t max_index = 0;
};

// The prefix of a trace visible at timeline index `current`: rows beyond it
// throw. Trigger decisions only ever receive this view.
class TraceView {
 public:
  TraceView(const ProbTrace& trace, std::size_t current, AccessProbe* probe = nullptr);

  std::size_t current_index() const { return current_; }
  Timestamp current_time() const { return trace_->timeline()[current_]; }
  Timestamp series_length() const { return trace_->timeline().series_length(); }
  std::size_t num_classes() const { return trace_->num_classes(); }
  std::size_t timeline_size() const { return trace_->size(); }
  bool at_last() const { return current_ + 1 == trace_->size(); }
  // The decision schedule is known in advance; only measurements are gated.
  const SampledTimeline& timeline() const { return trace_->timeline(); }

  std::span<const double> row(std::size_t index) const;
  std::span<const double> current_row() const { return row(current_); }

 private:
  const ProbTrace* trace_;
  std::size_t current_;
  AccessProbe* probe_;
};

// Traces of the trigger partition with their true labels.
class TriggerTrainSet {
 public:
  TriggerTrainSet(std::vector<ProbTrace> traces, std::vector<ClassLabel> labels);

  std::size_t size() const { return traces_.size(); }
  const ProbTrace& trace(std::size_t i) const { return traces_[i]; }
  ClassLabel label(std::size_t i) const { return labels_[i]; }
  const std::vector<ProbTrace>& traces() const { return traces_; }
  const std::vector<ClassLabel>& labels() const { return labels_; }
  const SampledTimeline& timeline() const { return traces_.front().timeline(); }
  std::size_t num_classes() const { return traces_.front().num_classes(); }

 private:
  std::vector<ProbTrace> traces_;
  std::vector<ClassLabel> labels_;
};

}  // namespace ects
