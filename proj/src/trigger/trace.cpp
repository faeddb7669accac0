#include "ects/trigger/trace.hpp"

#include <cmath>
#include <string>

#include "ects/error.hpp"

namespace ects {

ProbTrace::ProbTrace(SampledTimeline timeline, std::size_t num_classes, std::vector<double> probs,
                     TraceOrigin origin)
    : timeline_(std::move(timeline)), num_classes_(num_classes), probs_(std::move(probs)),
      origin_(origin) {
  if (num_classes_ < 2) throw PreconditionError("trace: need at least two classes");
  if (probs_.size() != timeline_.size() * num_classes_) {
    throw PreconditionError("trace: expected one probability vector per timestamp");
  }
  for (std::size_t i = 0; i < timeline_.size(); ++i) {
    double total = 0.0;
    for (double p : row(i)) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw PreconditionError("trace: probability outside [0, 1] at index " + std::to_string(i));
      }
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-6) {
      throw PreconditionError("trace: probabilities do not sum to 1 at index " + std::to_string(i));
    }
  }
}

ProbTrace ProbTrace::from_rows(SampledTimeline timeline, const std::vector<std::vector<double>>& rows,
                               TraceOrigin origin) {
  if (rows.empty()) throw PreconditionError("trace: no rows");
  const std::size_t k = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * k);
  for (const auto& r : rows) {
    if (r.size() != k) throw PreconditionError("trace: rows differ in class count");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return ProbTrace(std::move(timeline), k, std::move(flat), origin);
}

ProbTrace ProbTrace::with_origin(TraceOrigin origin) const {
  ProbTrace copy = *this;
  copy.origin_ = origin;
  return copy;
}

ClassLabel argmax(std::span<const double> probs) {
  ClassLabel best = 0;
  for (std::size_t c = 1; c < probs.size(); ++c) {
    if (probs[c] > probs[best]) best = c;
  }
  return best;
}

TopTwo top_two(std::span<const double> probs) {
  double first = -1.0;
  double second = -1.0;
  for (double p : probs) {
    if (p > first) {
      second = first;
      first = p;
    } else if (p > second) {
      second = p;
    }
  }
  return {first, first - second};
}

TraceView::TraceView(const ProbTrace& trace, std::size_t current, AccessProbe* probe)
    : trace_(&trace), current_(current), probe_(probe) {
  if (current_ >= trace.size()) throw PreconditionError("trace view: index beyond the timeline");
}

std::span<const double> TraceView::row(std::size_t index) const {
  if (index > current_) {
    throw PreconditionError("trace view: read of index " + std::to_string(index) +
                            " beyond the visible prefix " + std::to_string(current_));
  }
  if (probe_ != nullptr) {
    ++probe_->reads;
    if (index > probe_->max_index) probe_->max_index = index;
  }
  return trace_->row(index);
}

TriggerTrainSet::TriggerTrainSet(std::vector<ProbTrace> traces, std::vector<ClassLabel> labels)
    : traces_(std::move(traces)), labels_(std::move(labels)) {
  if (traces_.empty()) throw PreconditionError("trigger train set: empty");
  if (traces_.size() != labels_.size()) {
    throw PreconditionError("trigger train set: one label per trace required");
  }
  for (std::size_t i = 0; i < traces_.size(); ++i) {
    if (traces_[i].origin() != TraceOrigin::TriggerTrain) {
      throw PreconditionError("trigger train set: trace " + std::to_string(i) +
                              " does not come from the trigger partition");
    }
    if (!(traces_[i].timeline() == traces_.front().timeline()) ||
        traces_[i].num_classes() != traces_.front().num_classes()) {
      throw PreconditionError("trigger train set: traces must share timeline and classes");
    }
    if (labels_[i] >= traces_[i].num_classes()) {
      throw PreconditionError("trigger train set: label out of range");
    }
  }
}

}  // namespace ects
