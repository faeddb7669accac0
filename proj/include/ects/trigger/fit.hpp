#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ects/core/cost.hpp"
#include "ects/trigger/policy.hpp"
#include "ects/trigger/trace.hpp"

namespace ects {

enum class Method {
  Asap,
  Alap,
  ProbaThreshold,
  StoppingRule,
  Economy,
  Ecec,
  Calimera,
  EconomyMyopic,
  CalimeraMyopic,
};

std::string_view method_name(Method method);
std::optional<Method> parse_method(std::string_view name);
const std::vector<Method>& all_methods();

struct TriggerFitOptions {
  std::vector<std::size_t> economy_k_grid{1, 2, 3, 4, 5, 6, 7, 8, 9, 10,
                                          11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
  double economy_pseudo_count = 1.0;
  double ridge_lambda = 1e-2;
  double rbf_bandwidth = 0.0;  // <= 0: median pairwise distance
};

// {1/40, 2/40, ..., 1}
std::vector<double> threshold_grid();

// 10 evenly spaced values in [-1, 1].
std::vector<double> stopping_rule_axis();

// realized[s][tau]: weighted cost of halting series s at timeline index tau
// with the argmax label there.
std::vector<std::vector<double>> realized_cost_table(const TriggerTrainSet& train,
                                                     const CostModel& cost);

// Mean of realized[s][halt[s]].
double mean_cost_of_halts(const std::vector<std::vector<double>>& realized,
                          std::span<const std::size_t> halts);

// Mean weighted cost of simulating `model` on every train trace.
double empirical_cost(const TriggerModel& model, const TriggerTrainSet& train);

TriggerModel fit_proba_threshold(const TriggerTrainSet& train, const CostModel& cost);
TriggerModel fit_stopping_rule(const TriggerTrainSet& train, const CostModel& cost);

// Builds the Economy model for one k; nullopt if some bin is empty at some
// timestamp.
std::optional<EconomyParams> build_economy(const TriggerTrainSet& train, const CostModel& cost,
                                           std::size_t k, double pseudo_count);

// k chosen from the grid by empirical cost (ties: smaller k); throws
// DataError if every k is infeasible.
TriggerModel fit_economy(const TriggerTrainSet& train, const CostModel& cost,
                         const std::vector<std::size_t>& k_grid, double pseudo_count = 1.0);

// Add-one smoothed per-timestamp precisions.
std::vector<std::vector<double>> ecec_precisions(const TriggerTrainSet& train);
TriggerModel fit_ecec(const TriggerTrainSet& train, const CostModel& cost);

// Fits one regressor per non-final index from per-index inputs
// (inputs_by_tau[tau][series]) and the realized cost table.
CalimeraParams calimera_from_costs(std::vector<std::vector<std::vector<double>>> inputs_by_tau,
                                   std::vector<std::vector<double>> realized_costs, double lambda,
                                   double bandwidth, bool myopic);

TriggerModel fit_calimera(const TriggerTrainSet& train, const CostModel& cost, double lambda,
                          double bandwidth, bool myopic = false);

// Dispatches on the method; myopic methods fit the original and convert it.
TriggerModel fit_trigger(Method method, const TriggerTrainSet& train, const CostModel& cost,
                         const TriggerFitOptions& options = TriggerFitOptions{});

}  // namespace ects
