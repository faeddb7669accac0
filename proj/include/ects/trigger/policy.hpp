#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ects/core/cost.hpp"
#include "ects/core/types.hpp"
#include "ects/trigger/kernel_ridge.hpp"
#include "ects/trigger/trace.hpp"

namespace ects {

enum class Action { Halt, Wait };

struct AsapParams {};
struct AlapParams {};

struct ProbaThresholdParams {
  double theta = 0.5;
};

struct StoppingRuleParams {
  std::array<double, 3> gamma{0.0, 0.0, 0.0};
};

// Confidence-partition Markov model. Index conventions: [tau] is a timeline
// index, groups are 0..k-1 in ascending max-probability order.
struct EconomyParams {
  std::size_t k = 1;
  double pseudo_count = 1.0;
  bool myopic = false;
  // [tau], k - 1 ascending edges; a value x is in group #{edges e : x > e}
  std::vector<std::vector<double>> bin_edges;
  // [tau][from][to] for tau = 0..L-2; rows sum to 1
  std::vector<std::vector<std::vector<double>>> transitions;
  // [tau][group][true][predicted] raw counts
  std::vector<std::vector<std::vector<std::vector<double>>>> confusion_counts;
  // [tau][group]: sum_y P(y|g) sum_yhat P(yhat|y,g) C_m(yhat|y), derived from the counts
  std::vector<std::vector<double>> group_misclassification;
};

struct EcecParams {
  // [tau][class], add-one smoothed precision of predicting the class at tau
  std::vector<std::vector<double>> precision;
  double gamma = 0.5;
};

struct CalimeraParams {
  bool myopic = false;
  double lambda = 1e-2;
  double bandwidth = 0.0;  // requested; <= 0 means median heuristic per timestamp
  // One regressor per non-final timeline index.
  std::vector<KernelRidgeRegressor> regressors;
  // [series][tau] realized weighted costs on the trigger-train set; kept so
  // the myopic variant can be refitted from the same data.
  std::vector<std::vector<double>> realized_costs;
};

using TriggerParams = std::variant<AsapParams, AlapParams, ProbaThresholdParams, StoppingRuleParams,
                                   EconomyParams, EcecParams, CalimeraParams>;

// A fitted halting policy together with the cost model it was fitted against.
class TriggerModel {
 public:
  TriggerModel(TriggerParams params, CostModel cost);

  const TriggerParams& params() const { return params_; }
  const CostModel& cost() const { return cost_; }

  // Method name as used in configs and reports.
  std::string name() const;

  // Halt or wait at view.current_index(). The last index always halts.
  Action decide(const TraceView& view) const;

 private:
  TriggerParams params_;
  CostModel cost_;
};

// Halt iff the largest probability reaches theta.
Action decide_proba_threshold(std::span<const double> probs, double theta);

// Halt iff g1 * p1 + g2 * p2 + g3 * t / T > 0, with p1 the largest
// probability and p2 its gap to the runner-up.
Action decide_stopping_rule(double p1, double p2, Timestamp t, Timestamp series_length,
                            const std::array<double, 3>& gamma);

// 1 - prod over tau with predictions[tau] == predictions.back() of
// (1 - precision[tau][predictions.back()]).
double ecec_confidence(std::span<const ClassLabel> predictions,
                       std::span<const std::vector<double>> precision);

// Group of a max-probability value under one timestamp's bin edges.
std::size_t economy_group(std::span<const double> edges, double max_prob);

// Expected weighted cost of deciding at each tau = t_index..last (only
// t_index and t_index + 1 for the myopic variant) for a series currently in
// `group`.
std::vector<double> economy_expected_costs(const EconomyParams& params, const CostModel& cost,
                                           const SampledTimeline& timeline, std::size_t group,
                                           std::size_t t_index);

// The anticipation rule on an expected-cost vector whose first entry is
// "now": halt iff now <= every later entry (full) or now <= the next entry
// (myopic). A single entry halts.
Action halt_on_expected_costs(std::span<const double> costs, bool myopic);

// Regression targets from one series' realized costs: c[tau] - min over
// tau' > tau of c[tau'] (full), or c[tau] - c[tau + 1] (myopic). Length L - 1.
std::vector<double> calimera_targets(std::span<const double> realized_costs, bool myopic);

// Calimera regressor input: the probability vector followed by t / T.
std::vector<double> calimera_input(std::span<const double> probs, Timestamp t, Timestamp series_length);

// Replays the online process: feeds prefixes in order, returns the first
// halt (forced at the last index) with the argmax label at that time.
Decision simulate_online(const TriggerModel& model, const ProbTrace& trace,
                         AccessProbe* probe = nullptr);

// The horizon-one variant of an Economy or Calimera model; other variants
// are rejected with PreconditionError. Calimera regressors are refitted on
// myopic targets.
TriggerModel make_myopic(const TriggerModel& model);

}  // namespace ects
