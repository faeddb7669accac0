#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ects/core/cost.hpp"
#include "ects/core/types.hpp"
#include "ects/trigger/trace.hpp"

namespace ects {

// Best decision time with hindsight, on the same sampled timeline the
// policies use. Ties go to the earliest index.
struct OracleResult {
  std::size_t index = 0;
  Timestamp time = 0;
  double loss = 0.0;  // weighted
};

OracleResult optimal_time(const ProbTrace& trace, ClassLabel truth, const CostModel& cost);

// Prices one decision and attaches the oracle time and regret.
EvalRecord make_record(std::string dataset, std::string method, const CostModel& cost, std::string series_id,
                       ClassLabel truth, const ProbTrace& trace, const Decision& decision);

// Weighted cost of the record minus its oracle cost.
double regret(const EvalRecord& record);

// Mean of unweighted C_m + C_d.
double avg_cost(std::span<const EvalRecord> records);

// Mean of alpha * C_m + (1 - alpha) * C_d from the records' unweighted parts.
double avg_cost_alpha(std::span<const EvalRecord> records, double alpha);

double accuracy(std::span<const EvalRecord> records);

// Mean of t_hat / T.
double earliness(std::span<const EvalRecord> records);

struct RunSummary {
  std::string dataset;
  std::string method;
  double alpha = 0.0;
  std::size_t count = 0;
  double avg_cost = 0.0;  // AvgCost at the run's alpha
  double accuracy = 0.0;
  double earliness = 0.0;
  double mean_regret = 0.0;
  double mean_trigger_index = 0.0;  // mean timeline position, 0-based
};

// All records must share dataset, method and alpha.
RunSummary summarize(std::span<const EvalRecord> records);

struct ParetoPoint {
  double earliness = 0.0;
  double accuracy = 0.0;
};

// Indices (ascending) of the points no other point dominates; a point is
// dominated by one with <= earliness and >= accuracy, strictly better in one.
std::vector<std::size_t> pareto_front(std::span<const ParetoPoint> points);

}  // namespace ects
