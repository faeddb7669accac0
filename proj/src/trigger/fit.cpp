#include "ects/trigger/fit.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "ects/error.hpp"

namespace ects {
namespace {

constexpr std::array<std::pair<Method, std::string_view>, 9> kMethodNames{{
    {Method::Asap, "asap"},
    {Method::Alap, "alap"},
    {Method::ProbaThreshold, "proba_threshold"},
    {Method::StoppingRule, "stopping_rule"},
    {Method::Economy, "economy"},
    {Method::Ecec, "ecec"},
    {Method::Calimera, "calimera"},
    {Method::EconomyMyopic, "economy_myopic"},
    {Method::CalimeraMyopic, "calimera_myopic"},
}};

// First index where halts[i] holds, else the last index.
template <typename Pred>
std::size_t first_halt(std::size_t length, Pred&& halts) {
  for (std::size_t i = 0; i + 1 < length; ++i) {
    if (halts(i)) return i;
  }
  return length - 1;
}

}  // namespace

std::string_view method_name(Method method) {
  for (const auto& [m, name] : kMethodNames) {
    if (m == method) return name;
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (const auto& [m, n] : kMethodNames) {
    if (n == name) return m;
  }
  return std::nullopt;
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods = [] {
    std::vector<Method> out;
    for (const auto& [m, name] : kMethodNames) out.push_back(m);
    return out;
  }();
  return methods;
}

std::vector<double> threshold_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 40; ++i) grid.push_back(i / 40.0);
  return grid;
}

std::vector<double> stopping_rule_axis() {
  std::vector<double> axis;
  for (int i = 0; i < 10; ++i) axis.push_back(-1.0 + 2.0 * i / 9.0);
  return axis;
}

std::vector<std::vector<double>> realized_cost_table(const TriggerTrainSet& train, const CostModel& cost) {
  const auto& timeline = train.timeline();
  std::vector<std::vector<double>> table(train.size(), std::vector<double>(timeline.size()));
  for (std::size_t s = 0; s < train.size(); ++s) {
    for (std::size_t tau = 0; tau < timeline.size(); ++tau) {
      table[s][tau] = cost.weighted_loss(argmax(train.trace(s).row(tau)), train.label(s), timeline[tau],
                                         timeline.series_length());
    }
  }
  return table;
}

double mean_cost_of_halts(const std::vector<std::vector<double>>& realized, std::span<const std::size_t> halts) {
  double total = 0.0;
  for (std::size_t s = 0; s < realized.size(); ++s) total += realized[s][halts[s]];
  return total / static_cast<double>(realized.size());
}

double empirical_cost(const TriggerModel& model, const TriggerTrainSet& train) {
  const auto& timeline = train.timeline();
  double total = 0.0;
  for (std::size_t s = 0; s < train.size(); ++s) {
    const Decision d = simulate_online(model, train.trace(s));
    total += model.cost().weighted_loss(d.predicted_label, train.label(s), d.trigger_time, timeline.series_length());
  }
  return total / static_cast<double>(train.size());
}

TriggerModel fit_proba_threshold(const TriggerTrainSet& train, const CostModel& cost) {
  const auto realized = realized_cost_table(train, cost);
  const std::size_t length = train.timeline().size();
  std::vector<std::vector<double>> max_prob(train.size(), std::vector<double>(length));
  for (std::size_t s = 0; s < train.size(); ++s) {
    for (std::size_t i = 0; i < length; ++i) {
      const auto row = train.trace(s).row(i);
      max_prob[s][i] = *std::max_element(row.begin(), row.end());
    }
  }
  double best_cost = std::numeric_limits<double>::infinity();
  double best_theta = 1.0;
  std::vector<std::size_t> halts(train.size());
  for (double theta : threshold_grid()) {
    for (std::size_t s = 0; s < train.size(); ++s) {
      halts[s] = first_halt(length, [&](std::size_t i) { return max_prob[s][i] >= theta; });
    }
    const double c = mean_cost_of_halts(realized, halts);
    if (c < best_cost) {
      best_cost = c;
      best_theta = theta;
    }
  }
  return TriggerModel(ProbaThresholdParams{best_theta}, cost);
}

TriggerModel fit_stopping_rule(const TriggerTrainSet& train, const CostModel& cost) {
  const auto realized = realized_cost_table(train, cost);
  const auto& timeline = train.timeline();
  const std::size_t length = timeline.size();
  std::vector<std::vector<TopTwo>> top(train.size(), std::vector<TopTwo>(length));
  for (std::size_t s = 0; s < train.size(); ++s) {
    for (std::size_t i = 0; i < length; ++i) top[s][i] = top_two(train.trace(s).row(i));
  }
  const auto axis = stopping_rule_axis();
  double best_cost = std::numeric_limits<double>::infinity();
  std::array<double, 3> best{axis.front(), axis.front(), axis.front()};
  std::vector<std::size_t> halts(train.size());
  // loops nest in lexicographic order, so the strict < keeps the smallest tie
  for (double g1 : axis) {
    for (double g2 : axis) {
      for (double g3 : axis) {
        const std::array<double, 3> gamma{g1, g2, g3};
        for (std::size_t s = 0; s < train.size(); ++s) {
          halts[s] = first_halt(length, [&](std::size_t i) {
            return decide_stopping_rule(top[s][i].largest, top[s][i].margin, timeline[i],
                                        timeline.series_length(), gamma) == Action::Halt;
          });
        }
        const double c = mean_cost_of_halts(realized, halts);
        if (c < best_cost) {
          best_cost = c;
          best = gamma;
        }
      }
    }
  }
  return TriggerModel(StoppingRuleParams{best}, cost);
}

std::vector<std::vector<double>> ecec_precisions(const TriggerTrainSet& train) {
  const std::size_t length = train.timeline().size();
  const std::size_t num_classes = train.num_classes();
  std::vector<std::vector<double>> precision(length, std::vector<double>(num_classes));
  for (std::size_t tau = 0; tau < length; ++tau) {
    std::vector<double> predicted(num_classes, 0.0);
    std::vector<double> correct(num_classes, 0.0);
    for (std::size_t s = 0; s < train.size(); ++s) {
      const ClassLabel yhat = argmax(train.trace(s).row(tau));
      predicted[yhat] += 1.0;
      if (yhat == train.label(s)) correct[yhat] += 1.0;
    }
    for (std::size_t c = 0; c < num_classes; ++c) precision[tau][c] = (correct[c] + 1.0) / (predicted[c] + 2.0);
  }
  return precision;
}

TriggerModel fit_ecec(const TriggerTrainSet& train, const CostModel& cost) {
  const auto realized = realized_cost_table(train, cost);
  const auto precision = ecec_precisions(train);
  const std::size_t length = train.timeline().size();
  std::vector<std::vector<double>> confidence(train.size(), std::vector<double>(length));
  for (std::size_t s = 0; s < train.size(); ++s) {
    std::vector<ClassLabel> predictions;
    for (std::size_t i = 0; i < length; ++i) {
      predictions.push_back(argmax(train.trace(s).row(i)));
      confidence[s][i] = ecec_confidence(predictions, precision);
    }
  }
  double best_cost = std::numeric_limits<double>::infinity();
  double best_gamma = 1.0;
  std::vector<std::size_t> halts(train.size());
  for (double gamma : threshold_grid()) {
    for (std::size_t s = 0; s < train.size(); ++s) {
      halts[s] = first_halt(length, [&](std::size_t i) { return confidence[s][i] >= gamma; });
    }
    const double c = mean_cost_of_halts(realized, halts);
    if (c < best_cost) {
      best_cost = c;
      best_gamma = gamma;
    }
  }
  return TriggerModel(EcecParams{precision, best_gamma}, cost);
}

TriggerModel fit_trigger(Method method, const TriggerTrainSet& train, const CostModel& cost,
                         const TriggerFitOptions& options) {
  switch (method) {
    case Method::Asap:
      return TriggerModel(AsapParams{}, cost);
    case Method::Alap:
      return TriggerModel(AlapParams{}, cost);
    case Method::ProbaThreshold:
      return fit_proba_threshold(train, cost);
    case Method::StoppingRule:
      return fit_stopping_rule(train, cost);
    case Method::Economy:
      return fit_economy(train, cost, options.economy_k_grid, options.economy_pseudo_count);
    case Method::Ecec:
      return fit_ecec(train, cost);
    case Method::Calimera:
      return fit_calimera(train, cost, options.ridge_lambda, options.rbf_bandwidth, false);
    case Method::EconomyMyopic:
      return make_myopic(fit_economy(train, cost, options.economy_k_grid, options.economy_pseudo_count));
    case Method::CalimeraMyopic:
      return fit_calimera(train, cost, options.ridge_lambda, options.rbf_bandwidth, true);
  }
  throw PreconditionError("fit_trigger: unknown method");
}

}  // namespace ects
