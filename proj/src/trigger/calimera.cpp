#include <string>

#include "ects/error.hpp"
#include "ects/trigger/fit.hpp"

namespace ects {

CalimeraParams calimera_from_costs(std::vector<std::vector<std::vector<double>>> inputs_by_tau,
                                   std::vector<std::vector<double>> realized_costs, double lambda,
                                   double bandwidth, bool myopic) {
  CalimeraParams p;
  p.myopic = myopic;
  p.lambda = lambda;
  p.bandwidth = bandwidth;
  std::vector<std::vector<double>> targets;
  targets.reserve(realized_costs.size());
  for (const auto& row : realized_costs) {
    targets.push_back(calimera_targets(row, myopic));
    if (targets.back().size() != inputs_by_tau.size()) {
      throw PreconditionError("calimera: one input set per non-final timestamp required");
    }
  }
  for (std::size_t tau = 0; tau < inputs_by_tau.size(); ++tau) {
    if (inputs_by_tau[tau].size() != realized_costs.size()) {
      throw PreconditionError("calimera: one input per series required");
    }
    std::vector<double> y(realized_costs.size());
    for (std::size_t s = 0; s < y.size(); ++s) y[s] = targets[s][tau];
    try {
      p.regressors.push_back(fit_kernel_ridge(std::move(inputs_by_tau[tau]), y, lambda, bandwidth));
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " at timeline index " + std::to_string(tau));
    }
  }
  p.realized_costs = std::move(realized_costs);
  return p;
}

TriggerModel fit_calimera(const TriggerTrainSet& train, const CostModel& cost, double lambda,
                          double bandwidth, bool myopic) {
  const auto& timeline = train.timeline();
  auto realized = realized_cost_table(train, cost);
  std::vector<std::vector<std::vector<double>>> inputs(timeline.size() - 1);
  for (std::size_t tau = 0; tau + 1 < timeline.size(); ++tau) {
    inputs[tau].reserve(train.size());
    for (std::size_t s = 0; s < train.size(); ++s) {
      inputs[tau].push_back(calimera_input(train.trace(s).row(tau), timeline[tau], timeline.series_length()));
    }
  }
  return TriggerModel(calimera_from_costs(std::move(inputs), std::move(realized), lambda, bandwidth, myopic),
                      cost);
}

}  // namespace ects
