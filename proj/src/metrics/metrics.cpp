#include "ects/metrics/metrics.hpp"

#include <limits>
#include <string>

#include "ects/error.hpp"

namespace ects {
namespace {

void require_nonempty(std::span<const EvalRecord> records, const char* what) {
  if (records.empty()) throw PreconditionError(std::string(what) + ": no records");
}

}  // namespace

OracleResult optimal_time(const ProbTrace& trace, ClassLabel truth, const CostModel& cost) {
  const auto& timeline = trace.timeline();
  OracleResult best;
  best.loss = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double loss = cost.weighted_loss(argmax(trace.row(i)), truth, timeline[i], timeline.series_length());
    if (loss < best.loss) best = {i, timeline[i], loss};
  }
  return best;
}

EvalRecord make_record(std::string dataset, std::string method, const CostModel& cost, std::string series_id,
                       ClassLabel truth, const ProbTrace& trace, const Decision& decision) {
  const Timestamp T = trace.timeline().series_length();
  EvalRecord r;
  r.dataset = std::move(dataset);
  r.method = std::move(method);
  r.alpha = cost.alpha();
  r.series_id = std::move(series_id);
  r.true_label = truth;
  r.predicted_label = decision.predicted_label;
  r.trigger_time = decision.trigger_time;
  r.trigger_index = decision.trigger_index;
  r.series_length = T;
  r.misclassification_cost = cost.misclassification_cost(decision.predicted_label, truth);
  r.delay_cost = cost.delay_cost(decision.trigger_time, T);
  r.weighted_cost = cost.weighted_loss(decision.predicted_label, truth, decision.trigger_time, T);
  const OracleResult oracle = optimal_time(trace, truth, cost);
  r.oracle_time = oracle.time;
  r.oracle_cost = oracle.loss;
  r.regret = regret(r);
  return r;
}

double regret(const EvalRecord& record) { return record.weighted_cost - record.oracle_cost; }

double avg_cost(std::span<const EvalRecord> records) {
  require_nonempty(records, "avg_cost");
  double total = 0.0;
  for (const auto& r : records) total += r.misclassification_cost + r.delay_cost;
  return total / static_cast<double>(records.size());
}

double avg_cost_alpha(std::span<const EvalRecord> records, double alpha) {
  require_nonempty(records, "avg_cost_alpha");
  double total = 0.0;
  for (const auto& r : records) total += alpha * r.misclassification_cost + (1.0 - alpha) * r.delay_cost;
  return total / static_cast<double>(records.size());
}

double accuracy(std::span<const EvalRecord> records) {
  require_nonempty(records, "accuracy");
  double hits = 0.0;
  for (const auto& r : records) hits += r.predicted_label == r.true_label ? 1.0 : 0.0;
  return hits / static_cast<double>(records.size());
}

double earliness(std::span<const EvalRecord> records) {
  require_nonempty(records, "earliness");
  double total = 0.0;
  for (const auto& r : records) total += static_cast<double>(r.trigger_time) / static_cast<double>(r.series_length);
  return total / static_cast<double>(records.size());
}

RunSummary summarize(std::span<const EvalRecord> records) {
  require_nonempty(records, "summarize");
  RunSummary s;
  s.dataset = records.front().dataset;
  s.method = records.front().method;
  s.alpha = records.front().alpha;
  s.count = records.size();
  double regret_total = 0.0;
  double index_total = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.dataset != s.dataset || r.method != s.method || r.alpha != s.alpha) {
      throw PreconditionError("summarize: records mix datasets, methods or alphas");
    }
    regret_total += r.regret;
    index_total += static_cast<double>(r.trigger_index);
  }
  s.avg_cost = avg_cost_alpha(records, s.alpha);
  s.accuracy = accuracy(records);
  s.earliness = earliness(records);
  s.mean_regret = regret_total / static_cast<double>(records.size());
  s.mean_trigger_index = index_total / static_cast<double>(records.size());
  return s;
}

std::vector<std::size_t> pareto_front(std::span<const ParetoPoint> points) {
  std::vector<std::size_t> front;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      const auto& a = points[j];
      const auto& b = points[i];
      dominated = a.earliness <= b.earliness && a.accuracy >= b.accuracy &&
                  (a.earliness < b.earliness || a.accuracy > b.accuracy);
    }
    if (!dominated) front.push_back(i);
  }
  return front;
}

}  // namespace ects
