// Acceptance checks, one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <unistd.h>

#include "helpers.hpp"

#include "ects/bench/config.hpp"
#include "ects/bench/pipeline.hpp"
#include "ects/bench/report.hpp"
#include "ects/classify/logistic.hpp"
#include "ects/metrics/metrics.hpp"
#include "ects/stats/stats.hpp"
#include "ects/trigger/fit.hpp"
#include "ects/trigger/kernel_ridge.hpp"
#include "ects/trigger/policy.hpp"

using namespace ects;
namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome require(bool condition, const std::string& detail) { return {condition, detail}; }

void merge(Outcome& into, const Outcome& more) {
  into.pass = into.pass && more.pass;
  if (!more.detail.empty()) into.detail += (into.detail.empty() ? "" : "; ") + more.detail;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const std::vector<std::string> kCoreMethods{"asap", "alap", "proba_threshold", "stopping_rule", "economy", "ecec", "calimera"};

Json synthetic_config(std::vector<std::uint64_t> seeds, bool with_myopic) {
  Json datasets = Json::array();
  for (auto s : seeds) {
    datasets.push_back({{"synthetic",
                         {{"classes", 3}, {"length", 15}, {"per_class", 100}, {"noise_std", 0.3}, {"seed", s}}}});
  }
  Json methods = kCoreMethods;
  if (with_myopic) {
    methods.push_back("economy_myopic");
    methods.push_back("calimera_myopic");
  }
  return {{"datasets", datasets}, {"methods", methods}};
}

// Mean over datasets of a summary field, per (method, alpha).
std::map<std::pair<std::string, double>, double> mean_by_method(const ReportBundle& b,
                                                                 const std::function<double(const RunSummary&)>& field) {
  std::map<std::pair<std::string, double>, std::pair<double, int>> acc;
  for (const auto& s : b.summaries) {
    auto& [sum, n] = acc[{s.method, s.alpha}];
    sum += field(s);
    ++n;
  }
  std::map<std::pair<std::string, double>, double> out;
  for (const auto& [key, v] : acc) out[key] = v.first / v.second;
  return out;
}

// Misclassification part of AvgCost at alpha = 1, per method, from records.
std::map<std::string, double> mean_misclassification(const ReportBundle& b, double alpha) {
  std::map<std::string, std::pair<double, int>> acc;
  for (const auto& r : b.records) {
    if (r.alpha != alpha) continue;
    auto& [sum, n] = acc[r.method];
    sum += r.misclassification_cost;
    ++n;
  }
  std::map<std::string, double> out;
  for (const auto& [m, v] : acc) out[m] = v.first / v.second;
  return out;
}

Outcome criterion1(const ReportBundle& bench) {
  Outcome o;
  std::map<std::pair<std::string, double>, double> asap_cost;
  for (const auto& s : bench.summaries)
    if (s.method == "asap") asap_cost[{s.dataset, s.alpha}] = s.avg_cost;
  double worst_gap = -std::numeric_limits<double>::infinity();
  double worst_identity = 0.0;
  for (const auto& s : bench.summaries) {
    if (s.alpha == 0.0) worst_gap = std::max(worst_gap, asap_cost.at({s.dataset, 0.0}) - s.avg_cost);
    worst_identity =
        std::max(worst_identity, std::abs(s.avg_cost - (s.alpha * (1 - s.accuracy) + (1 - s.alpha) * s.earliness)));
  }
  merge(o, require(worst_gap <= 1e-12, "max(Asap - other) at alpha 0 = " + num(worst_gap)));
  merge(o, require(worst_identity <= 1e-12, "max identity residual = " + num(worst_identity)));
  return o;
}

Outcome criterion2() {
  Rng rng(20240601);
  const auto cost = CostModel::standard(2, 0.5);
  const TriggerModel asap(AsapParams{}, cost), alap(AlapParams{}, cost);
  const TriggerModel pt(ProbaThresholdParams{1.0 / 40.0}, cost);
  const TriggerModel sr_up(StoppingRuleParams{{0, 0, 1}}, cost), sr_down(StoppingRuleParams{{0, 0, -1}}, cost);
  int mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const auto tl = testing::random_timeline(rng, 1 + rng.below(20), 30);
    const auto trace = testing::random_trace(rng, tl, 2);
    const auto first = simulate_online(asap, trace).trigger_time;
    const auto last = simulate_online(alap, trace).trigger_time;
    mismatches += simulate_online(pt, trace).trigger_time != first;
    mismatches += simulate_online(sr_up, trace).trigger_time != first;
    mismatches += simulate_online(sr_down, trace).trigger_time != last;
  }
  return require(mismatches == 0, "100 traces, " + std::to_string(mismatches) + " mismatched decision times");
}

Outcome criterion3(const ReportBundle& bench) {
  Outcome o;
  double min_regret = std::numeric_limits<double>::infinity();
  for (const auto& r : bench.records) min_regret = std::min(min_regret, r.regret);
  merge(o, require(min_regret >= 0.0, std::to_string(bench.records.size()) + " records, min regret " + num(min_regret)));

  Rng rng(99);
  int disagreements = 0;
  for (int i = 0; i < 1000; ++i) {
    const Timestamp T = 20 + static_cast<Timestamp>(rng.below(30));
    const auto tl = testing::random_timeline(rng, 1 + rng.below(20), T);
    const std::size_t k = 2 + rng.below(4);
    const auto trace = testing::random_trace(rng, tl, k);
    const ClassLabel truth = rng.below(k);
    const auto cost = i % 2 ? CostModel::standard(k, rng.uniform()) : CostModel::anomaly(k, rng.below(k), rng.uniform());
    double best = std::numeric_limits<double>::infinity();
    Timestamp best_t = 0;
    for (std::size_t j = 0; j < tl.size(); ++j) {
      const double loss = cost.weighted_loss(argmax(trace.row(j)), truth, tl[j], T);
      if (loss < best) {
        best = loss;
        best_t = tl[j];
      }
    }
    const auto got = optimal_time(trace, truth, cost);
    disagreements += got.time != best_t || got.loss != best;
  }
  merge(o, require(disagreements == 0, "1000 oracle traces, " + std::to_string(disagreements) + " disagreements"));
  return o;
}

Outcome criterion4() {
  const SampledTimeline tl({1, 2}, 2);
  std::vector<ProbTrace> traces;
  std::vector<ClassLabel> labels;
  const std::vector<int> wrong_first{0, 1, 5, 6};
  for (int s = 0; s < 10; ++s) {
    const ClassLabel y = s < 5 ? 0 : 1;
    const bool w1 = std::find(wrong_first.begin(), wrong_first.end(), s) != wrong_first.end();
    const bool w2 = s == 2;
    auto row = [](ClassLabel lean, double c) {
      return lean == 0 ? std::vector<double>{c, 1 - c} : std::vector<double>{1 - c, c};
    };
    traces.push_back(ProbTrace::from_rows(tl, {row(w1 ? 1 - y : y, 0.6 + 0.01 * s), row(w2 ? 1 - y : y, 0.8)},
                                          TraceOrigin::TriggerTrain));
    labels.push_back(y);
  }
  const TriggerTrainSet set(traces, labels);
  const auto cost = CostModel::standard(2, 0.5);

  Outcome o;
  const auto raw = build_economy(set, cost, 1, 0.0);
  const auto costs = economy_expected_costs(*raw, cost, tl, 0, 0);
  merge(o, require(std::abs(costs[0] - 0.45) < 1e-9 && std::abs(costs[1] - 0.55) < 1e-9,
                   "unsmoothed (" + num(costs[0]) + ", " + num(costs[1]) + ") vs (0.45, 0.55)"));

  // add-one smoothing: P(y) = (n_y + 1) / (n + 2), P(wrong | y) = (w_y + 1) / (n_y + 2)
  const auto smooth = economy_expected_costs(*build_economy(set, cost, 1, 1.0), cost, tl, 0, 0);
  const double mis0 = 2 * (6.0 / 12) * (3.0 / 7);
  const double mis1 = (6.0 / 12) * (2.0 / 7) + (6.0 / 12) * (1.0 / 7);
  const double want0 = 0.5 * mis0 + 0.5 * 0.5, want1 = 0.5 * mis1 + 0.5 * 1.0;
  merge(o, require(std::abs(smooth[0] - want0) < 1e-9 && std::abs(smooth[1] - want1) < 1e-9,
                   "add-one (" + num(smooth[0]) + ", " + num(smooth[1]) + ") vs hand (" + num(want0) + ", " +
                       num(want1) + ")"));
  return o;
}

Outcome criterion5() {
  Outcome o;
  long cases = 0, wrong = 0;
  for (std::size_t L = 2; L <= 6; ++L) {
    const auto tl = testing::full_timeline(static_cast<Timestamp>(L));
    for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      for (const auto& cost : {CostModel::standard(2, alpha), CostModel::anomaly(2, 1, alpha)}) {
        for (unsigned mask = 0; mask < (1u << L); ++mask) {
          for (ClassLabel truth : {0u, 1u}) {
            std::vector<double> c(L);
            for (std::size_t i = 0; i < L; ++i) {
              c[i] = cost.weighted_loss((mask >> i & 1u) ? truth : 1 - truth, truth, tl[i], tl.series_length());
            }
            const auto targets = calimera_targets(c, false);
            ++cases;
            for (std::size_t tau = 0; tau + 1 < L; ++tau) {
              double best = std::numeric_limits<double>::infinity();
              for (std::size_t later = tau + 1; later < L; ++later) best = std::min(best, c[later]);
              wrong += targets[tau] != c[tau] - best;
            }
          }
        }
      }
    }
  }
  merge(o, require(wrong == 0, std::to_string(cases) + " cost sequences, " + std::to_string(wrong) + " target mismatches"));

  double worst = 0.0;
  for (double lambda : {1e-3, 1e-2, 0.5, 3.0}) {
    for (double target : {-1.5, 0.2, 7.0}) {
      const std::vector<double> x{0.2, 0.5, 0.3, 0.4};
      const auto r = fit_kernel_ridge({x}, std::vector<double>{target}, lambda, 0.0);
      worst = std::max(worst, std::abs(r.predict(x) - target / (1 + lambda)));
    }
  }
  merge(o, require(worst < 1e-9, "single-point ridge max error " + num(worst)));
  return o;
}

Outcome criterion6() {
  Outcome o;
  Rng rng(6);
  int mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    std::vector<double> d(1 + rng.below(10));
    for (auto& x : d) x = double(static_cast<int>(rng.below(11)) - 5) + (rng.below(3) == 0 ? 0.5 : 0.0);
    const auto r = wilcoxon_signed_rank(d);
    // oracle: list all 2^n sign patterns over the non-zero magnitudes
    std::vector<double> nz;
    for (double x : d)
      if (x != 0.0) nz.push_back(x);
    double p = 1.0;
    if (!nz.empty()) {
      std::vector<double> mags;
      for (double x : nz) mags.push_back(std::abs(x));
      const auto ranks = average_ranks(mags);
      double observed = 0.0;
      for (std::size_t j = 0; j < nz.size(); ++j)
        if (nz[j] > 0) observed += ranks[j];
      double le = 0, ge = 0;
      const unsigned long total = 1ul << nz.size();
      for (unsigned long mask = 0; mask < total; ++mask) {
        double w = 0.0;
        for (std::size_t j = 0; j < nz.size(); ++j)
          if (mask >> j & 1ul) w += ranks[j];
        le += w <= observed + 1e-9;
        ge += w >= observed - 1e-9;
      }
      p = std::min(1.0, 2 * std::min(le, ge) / double(total));
    }
    mismatches += std::abs(r.p_two_sided - p) > 1e-12;
  }
  merge(o, require(mismatches == 0, "200 Wilcoxon cases, " + std::to_string(mismatches) + " mismatches"));

  const auto holm = holm_adjust(std::vector<double>{0.01, 0.04});
  merge(o, require(std::abs(holm[0] - 0.02) < 1e-15 && std::abs(holm[1] - 0.04) < 1e-15,
                   "Holm [0.01, 0.04] -> [" + num(holm[0]) + ", " + num(holm[1]) + "]"));

  const auto ci = bootstrap_mean_ci(std::vector<double>(30, 0.42), 0.9, 10000, 0);
  merge(o, require(ci.low == 0.42 && ci.high == 0.42, "constant CI (" + num(ci.low) + ", " + num(ci.high) + ")"));
  return o;
}

Outcome criterion7(const ReportBundle& bench) {
  Outcome o;
  const auto cost = mean_by_method(bench, [](const RunSummary& s) { return s.avg_cost; });
  const double baseline = std::min(cost.at({"asap", 0.5}), cost.at({"alap", 0.5}));
  for (const auto* m : {"proba_threshold", "stopping_rule", "economy", "calimera"}) {
    const double c = cost.at({m, 0.5});
    merge(o, require(c <= baseline + 0.02, std::string(m) + " " + num(c)));
  }
  o.detail = "alpha 0.5 vs min(asap, alap) " + num(baseline) + ": " + o.detail;

  double best0 = std::numeric_limits<double>::infinity();
  for (const auto& m : kCoreMethods) best0 = std::min(best0, cost.at({m, 0.0}));
  merge(o, require(cost.at({"asap", 0.0}) <= best0 + 1e-12, "alpha 0 asap " + num(cost.at({"asap", 0.0})) +
                                                                 " best " + num(best0)));

  const auto mis = mean_misclassification(bench, 1.0);
  double best1 = std::numeric_limits<double>::infinity();
  std::string best_method;
  for (const auto& m : kCoreMethods) {
    if (mis.at(m) < best1) {
      best1 = mis.at(m);
      best_method = m;
    }
  }
  merge(o, require(mis.at("alap") <= best1 + 0.02,
                   "alpha 1 alap C_m " + num(mis.at("alap")) + " best " + best_method + " " + num(best1)));
  return o;
}

Outcome criterion8(const ReportBundle& bench) {
  Outcome o;
  const auto cost = mean_by_method(bench, [](const RunSummary& s) { return s.avg_cost; });
  for (double a : {0.7, 0.8, 0.9}) {
    for (const auto* m : {"economy", "calimera"}) {
      const double full = cost.at({m, a});
      const double myopic = cost.at({std::string(m) + "_myopic", a});
      merge(o, require(myopic >= full - 0.005, std::string(m) + "@" + num(a) + " " + num(myopic) + " vs " + num(full)));
    }
  }
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion9() {
  const auto base = fs::temp_directory_path() / ("ects-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(base);
  Json doc = synthetic_config({7}, true);
  doc["alpha_grid"] = {0.0, 0.3, 0.6, 0.9};
  const auto config = parse_config(doc);
  write_reports(run_benchmark(config), base / "first", true);
  write_reports(run_benchmark(config), base / "second", true);
  int files = 0, differ = 0;
  for (const auto& entry : fs::directory_iterator(base / "first")) {
    ++files;
    differ += slurp(entry.path()) != slurp(base / "second" / entry.path().filename());
  }
  fs::remove_all(base);
  return require(files == 7 && differ == 0, std::to_string(files) + " report files, " + std::to_string(differ) + " differ");
}

Outcome criterion10() {
  Rng rng(10);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + rng.below(20), d = 1 + rng.below(6), k = 2 + rng.below(4);
    DesignMatrix x;
    x.rows = n;
    x.columns.assign(d, std::vector<double>(n));
    for (auto& col : x.columns)
      for (auto& v : col) v = rng.normal();
    std::vector<ClassLabel> y(n);
    for (auto& l : y) l = rng.below(k);
    SoftmaxModel m(k, d);
    for (auto& w : m.weights()) w = rng.normal();
    for (auto& b : m.intercepts()) b = rng.normal();
    const double l2 = rng.uniform() * 0.1;
    const auto g = softmax_loss_gradient(m, x, y, l2);
    auto probe = [&](double& param, double analytic) {
      const double saved = param, h = 1e-6;
      param = saved + h;
      const double up = softmax_loss_gradient(m, x, y, l2).loss;
      param = saved - h;
      const double down = softmax_loss_gradient(m, x, y, l2).loss;
      param = saved;
      const double numeric = (up - down) / (2 * h);
      worst = std::max(worst, std::abs(numeric - analytic) / std::max(1.0, std::abs(numeric)));
    };
    for (std::size_t i = 0; i < m.weights().size(); ++i) probe(m.weights()[i], g.weight_grad[i]);
    for (std::size_t i = 0; i < m.intercepts().size(); ++i) probe(m.intercepts()[i], g.intercept_grad[i]);
  }
  return require(worst < 1e-5, "50 instances, max relative error " + num(worst));
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  // Shared full runs: 3 seeds x (7 methods + 2 myopic) x 11 alphas.
  const ReportBundle bench = run_benchmark(parse_config(synthetic_config({0, 1, 2}, true)));
  const double bench_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"baseline identities", [&] { return criterion1(bench); }},
      {"trigger equivalences", criterion2},
      {"oracle soundness", [&] { return criterion3(bench); }},
      {"economy brute-force equivalence", criterion4},
      {"calimera targets", criterion5},
      {"statistics", criterion6},
      {"directional: cost-informed triggers beat the baselines", [&] { return criterion7(bench); }},
      {"directional: myopic variants do not beat anticipation", [&] { return criterion8(bench); }},
      {"determinism", criterion9},
      {"gradient check", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("benchmark %.1fs, total %.1fs\n", bench_seconds, total);
  return failed;
}
