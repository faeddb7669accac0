#include "ects/bench/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "ects/classify/collection.hpp"
#include "ects/classify/features.hpp"
#include "ects/core/rng.hpp"
#include "ects/data/synthetic.hpp"
#include "ects/data/transform.hpp"
#include "ects/error.hpp"
#include "ects/stats/stats.hpp"
#include "ects/trigger/fit.hpp"
#include "ects/trigger/policy.hpp"
#include "ects/util/format.hpp"
#include "ects/util/parallel.hpp"

namespace ects {
namespace {

std::string missing_class(std::span<const LabeledSeries> part, std::size_t num_classes, const char* part_name) {
  const auto counts = class_counts(part, num_classes);
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (counts[c] == 0) return "class " + std::to_string(c) + " has no member in the " + part_name + " subset";
  }
  return {};
}

void skip_all(const BenchConfig& config, const std::string& dataset, const std::string& reason,
              std::vector<SkipRecord>& skipped) {
  for (Method m : config.methods) {
    for (double a : config.alpha_grid) skipped.push_back({dataset, std::string(method_name(m)), a, reason});
  }
}

std::vector<ProbTrace> traces_of(const ChronologicalClassifierCollection& collection,
                                 std::span<const LabeledSeries> series, TraceOrigin origin) {
  std::vector<std::optional<ProbTrace>> slots(series.size());
  parallel_for(series.size(), [&](std::size_t i) { slots[i] = collection.prob_trace(series[i].values, origin); });
  std::vector<ProbTrace> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

bool clean_name(const std::string& s) {
  return !s.empty() && s.find_first_of(",\"\n\r") == std::string::npos;
}

}  // namespace

CostModel make_cost(CostSetting setting, std::size_t num_classes, double alpha, ClassLabel anomaly_class) {
  if (setting == CostSetting::Anomaly) return CostModel::anomaly(num_classes, anomaly_class, alpha);
  return CostModel::standard(num_classes, alpha);
}

std::vector<Dataset> load_datasets(const BenchConfig& config) {
  std::vector<Dataset> out;
  std::set<std::string> names;
  for (const auto& src : config.datasets) {
    Dataset d = src.manifest ? load_from_manifest(*src.manifest) : generate_synthetic(*src.synthetic);
    if (!src.name.empty()) d.name = src.name;
    if (!clean_name(d.name)) throw ConfigError("dataset name '" + d.name + "' is empty or has a comma, quote or newline");
    if (!names.insert(d.name).second) throw ConfigError("dataset name '" + d.name + "' appears twice");
    out.push_back(std::move(d));
  }
  return out;
}

void run_dataset(const BenchConfig& config, const Dataset& dataset, std::vector<EvalRecord>& records,
                 std::vector<SkipRecord>& skipped) {
  const std::size_t K = dataset.num_classes;
  const std::uint64_t seed = derive_seed(config.seed, dataset.name);

  // 40% classifier / 60% trigger, then 30% of the classifier part calibrates.
  SplitParts outer;
  SplitParts inner;
  try {
    outer = stratified_split(dataset.train, SplitSpec{}.classifier_fraction, derive_seed(seed, "trigger-split"));
    inner = stratified_split(outer.first, SplitSpec{}.calibration_fraction, derive_seed(seed, "calibration-split"));
  } catch (const DataError& e) {
    skip_all(config, dataset.name, e.what(), skipped);
    return;
  }
  const auto& calibration = inner.first;
  const auto& fit = inner.second;
  const auto& trigger_part = outer.second;
  for (auto [part, name] : {std::pair{&fit, "classifier"}, std::pair{&calibration, "calibration"},
                            std::pair{&trigger_part, "trigger"}}) {
    const std::string reason = missing_class(*part, K, name);
    if (!reason.empty()) {
      skip_all(config, dataset.name, reason, skipped);
      return;
    }
  }

  const SampledTimeline timeline = default_timeline(dataset.length, config.timeline_points);
  const auto collection = fit_collection(fit, timeline, config.classifier, calibration, K);

  std::vector<ClassLabel> trigger_labels;
  for (const auto& s : trigger_part) trigger_labels.push_back(s.label);
  const TriggerTrainSet trigger_set(traces_of(collection, trigger_part, TraceOrigin::TriggerTrain), trigger_labels);
  const auto test_traces = traces_of(collection, dataset.test, TraceOrigin::Test);

  struct Task {
    Method method;
    double alpha;
    std::vector<EvalRecord> records;
    std::string skip_reason;
  };
  std::vector<Task> tasks;
  for (double a : config.alpha_grid) {
    for (Method m : config.methods) tasks.push_back({m, a, {}, {}});
  }
  parallel_for(tasks.size(), [&](std::size_t i) {
    Task& task = tasks[i];
    const CostModel cost = make_cost(config.cost_setting, K, task.alpha, config.anomaly_class);
    const std::string method(method_name(task.method));
    try {
      const TriggerModel model = fit_trigger(task.method, trigger_set, cost, config.trigger);
      task.records.reserve(dataset.test.size());
      for (std::size_t j = 0; j < dataset.test.size(); ++j) {
        const Decision decision = simulate_online(model, test_traces[j]);
        task.records.push_back(make_record(dataset.name, method, cost, dataset.test[j].id, dataset.test[j].label,
                                           test_traces[j], decision));
      }
    } catch (const DataError& e) {
      task.records.clear();
      task.skip_reason = e.what();
    }
  });
  for (auto& task : tasks) {
    if (!task.skip_reason.empty()) {
      skipped.push_back({dataset.name, std::string(method_name(task.method)), task.alpha, task.skip_reason});
    } else {
      records.insert(records.end(), std::make_move_iterator(task.records.begin()),
                     std::make_move_iterator(task.records.end()));
    }
  }
}

ReportBundle derive_reports(std::vector<EvalRecord> records, std::vector<SkipRecord> skipped,
                            const StatsOptions& options) {
  ReportBundle b;
  std::sort(records.begin(), records.end(), [](const EvalRecord& x, const EvalRecord& y) {
    return std::tie(x.dataset, x.method, x.alpha, x.series_id) < std::tie(y.dataset, y.method, y.alpha, y.series_id);
  });
  std::sort(skipped.begin(), skipped.end(), [](const SkipRecord& x, const SkipRecord& y) {
    return std::tie(x.dataset, x.method, x.alpha, x.reason) < std::tie(y.dataset, y.method, y.alpha, y.reason);
  });
  b.records = std::move(records);
  b.skipped = std::move(skipped);

  for (std::size_t i = 0; i < b.records.size();) {
    std::size_t j = i;
    while (j < b.records.size() && b.records[j].dataset == b.records[i].dataset &&
           b.records[j].method == b.records[i].method && b.records[j].alpha == b.records[i].alpha) {
      ++j;
    }
    b.summaries.push_back(summarize(std::span(b.records).subspan(i, j - i)));
    i = j;
  }

  // alpha -> method -> dataset -> summary
  std::map<double, std::map<std::string, std::map<std::string, const RunSummary*>>> grid;
  std::set<std::string> all_datasets;
  for (const auto& s : b.summaries) {
    grid[s.alpha][s.method][s.dataset] = &s;
    all_datasets.insert(s.dataset);
  }

  for (const auto& [alpha, by_method] : grid) {
    std::vector<std::string> methods;
    for (const auto& [m, _] : by_method) methods.push_back(m);

    // Rankings and paired tests only use datasets every method completed.
    CostTable table;
    table.methods = methods;
    for (const auto& d : all_datasets) {
      std::vector<double> row;
      for (const auto& m : methods) {
        auto it = by_method.at(m).find(d);
        if (it == by_method.at(m).end()) break;
        row.push_back(it->second->avg_cost);
      }
      if (row.size() != methods.size()) continue;
      table.datasets.push_back(d);
      table.values.push_back(std::move(row));
    }

    if (!table.datasets.empty()) {
      const auto ranks = dataset_ranks(table);
      for (std::size_t m = 0; m < methods.size(); ++m) {
        std::vector<double> column;
        for (const auto& r : ranks) column.push_back(r[m]);
        RankRow row;
        row.alpha = alpha;
        row.method = methods[m];
        for (double v : column) row.mean_rank += v;
        row.mean_rank /= static_cast<double>(column.size());
        const auto ci = bootstrap_mean_ci(column, options.bootstrap_level, options.bootstrap_resamples,
                                          derive_seed(options.seed, "ranks/" + methods[m] + "/" + format_double(alpha)));
        row.ci_low = ci.low;
        row.ci_high = ci.high;
        row.datasets = column.size();
        b.ranks.push_back(row);
      }

      std::vector<PairwiseRow> pairs;
      std::vector<double> raw_p;
      for (std::size_t x = 0; x < methods.size(); ++x) {
        for (std::size_t y = x + 1; y < methods.size(); ++y) {
          std::vector<double> a;
          std::vector<double> c;
          for (const auto& row : table.values) {
            a.push_back(row[x]);
            c.push_back(row[y]);
          }
          const auto pr = pairwise_comparison(a, c);
          pairs.push_back({alpha, methods[x], methods[y], pr.wins, pr.ties, pr.losses, pr.p_value, 1.0});
          raw_p.push_back(pr.p_value);
        }
      }
      const auto adjusted = holm_adjust(raw_p);
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        pairs[k].p_holm = adjusted[k];
        b.pairwise.push_back(pairs[k]);
      }
    }

    // Pareto points: each method's earliness and accuracy averaged over the
    // datasets it completed.
    std::vector<ParetoPoint> points;
    for (const auto& m : methods) {
      ParetoPoint p;
      const auto& cells = by_method.at(m);
      for (const auto& [d, s] : cells) {
        p.earliness += s->earliness;
        p.accuracy += s->accuracy;
      }
      p.earliness /= static_cast<double>(cells.size());
      p.accuracy /= static_cast<double>(cells.size());
      points.push_back(p);
    }
    const auto front = pareto_front(points);
    for (std::size_t m = 0; m < methods.size(); ++m) {
      const bool on = std::find(front.begin(), front.end(), m) != front.end();
      b.pareto.push_back({alpha, methods[m], points[m].earliness, points[m].accuracy, on});
    }
  }
  return b;
}

ReportBundle run_benchmark(const BenchConfig& config) {
  if (config.methods.empty()) throw ConfigError("config: no methods");
  std::vector<EvalRecord> records;
  std::vector<SkipRecord> skipped;
  for (const auto& dataset : load_datasets(config)) run_dataset(config, dataset, records, skipped);
  return derive_reports(std::move(records), std::move(skipped),
                        {config.bootstrap_level, config.bootstrap_resamples, config.seed});
}

}  // namespace ects
