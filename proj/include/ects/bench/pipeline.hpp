#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ects/bench/config.hpp"
#include "ects/core/types.hpp"
#include "ects/data/dataset.hpp"
#include "ects/metrics/metrics.hpp"

namespace ects {

// A (dataset, method, alpha) combination that produced no records.
struct SkipRecord {
  std::string dataset;
  std::string method;
  double alpha = 0.0;
  std::string reason;
};

struct RankRow {
  double alpha = 0.0;
  std::string method;
  double mean_rank = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t datasets = 0;
};

struct PairwiseRow {
  double alpha = 0.0;
  std::string method_a;
  std::string method_b;
  std::size_t wins = 0;  // a cheaper than b
  std::size_t ties = 0;
  std::size_t losses = 0;
  double p_value = 1.0;
  double p_holm = 1.0;
};

struct ParetoRow {
  double alpha = 0.0;
  std::string method;
  double earliness = 0.0;
  double accuracy = 0.0;
  bool on_front = false;
};

struct ReportBundle {
  std::vector<EvalRecord> records;
  std::vector<RunSummary> summaries;
  std::vector<RankRow> ranks;
  std::vector<PairwiseRow> pairwise;
  std::vector<ParetoRow> pareto;
  std::vector<SkipRecord> skipped;
};

struct StatsOptions {
  double bootstrap_level = 0.9;
  std::size_t bootstrap_resamples = 10000;
  std::uint64_t seed = 0;
};

// The cost model of a setting: 0/1 with linear delay, or the 100:1 matrix
// around `anomaly_class` with exponential delay.
CostModel make_cost(CostSetting setting, std::size_t num_classes, double alpha, ClassLabel anomaly_class);

// Loads or generates every configured dataset, in config order.
std::vector<Dataset> load_datasets(const BenchConfig& config);

// Runs every (method, alpha) of the config on one dataset. Split failures
// and infeasible trigger fits become skip records.
void run_dataset(const BenchConfig& config, const Dataset& dataset, std::vector<EvalRecord>& records,
                 std::vector<SkipRecord>& skipped);

// Everything after the raw records: sorting, summaries, ranks, pairwise
// tests and Pareto sets. The result depends only on the inputs' contents.
ReportBundle derive_reports(std::vector<EvalRecord> records, std::vector<SkipRecord> skipped,
                            const StatsOptions& options = StatsOptions{});

ReportBundle run_benchmark(const BenchConfig& config);

}  // namespace ects
