#include "ects/trigger/policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ects/error.hpp"
#include "ects/trigger/fit.hpp"

namespace ects {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate(const TriggerParams& params, std::size_t num_classes) {
  std::visit(
      Overloaded{
          [](const AsapParams&) {},
          [](const AlapParams&) {},
          [](const ProbaThresholdParams& p) {
            if (!(p.theta > 0.0 && p.theta <= 1.0)) {
              throw PreconditionError("proba threshold: theta must lie in (0, 1]");
            }
          },
          [](const StoppingRuleParams& p) {
            for (double g : p.gamma) {
              if (!(g >= -1.0 && g <= 1.0)) throw PreconditionError("stopping rule: gamma outside [-1, 1]");
            }
          },
          [num_classes](const EconomyParams& p) {
            if (p.k < 1 || p.k > 20) throw PreconditionError("economy: k must lie in [1, 20]");
            const std::size_t steps = p.bin_edges.size();
            if (steps == 0 || p.group_misclassification.size() != steps ||
                p.transitions.size() + 1 != steps) {
              throw PreconditionError("economy: per-timestamp tables have inconsistent sizes");
            }
            for (const auto& edges : p.bin_edges) {
              if (edges.size() + 1 != p.k) throw PreconditionError("economy: need k - 1 bin edges");
            }
            for (const auto& m : p.transitions) {
              if (m.size() != p.k) throw PreconditionError("economy: transition matrix must be k x k");
              for (const auto& row : m) {
                double total = 0.0;
                for (double v : row) total += v;
                if (row.size() != p.k || std::abs(total - 1.0) > 1e-9) {
                  throw PreconditionError("economy: transition rows must sum to 1");
                }
              }
            }
            for (const auto& per_group : p.confusion_counts) {
              for (const auto& m : per_group) {
                if (m.size() != num_classes) throw PreconditionError("economy: confusion counts must be K x K");
              }
            }
          },
          [](const EcecParams& p) {
            if (!(p.gamma >= 0.0 && p.gamma <= 1.0)) throw PreconditionError("ecec: gamma must lie in [0, 1]");
            if (p.precision.empty()) throw PreconditionError("ecec: no precisions");
          },
          [](const CalimeraParams& p) {
            if (!(p.lambda > 0.0)) throw PreconditionError("calimera: lambda must be positive");
          },
      },
      params);
}

}  // namespace

TriggerModel::TriggerModel(TriggerParams params, CostModel cost)
    : params_(std::move(params)), cost_(std::move(cost)) {
  validate(params_, cost_.num_classes());
}

std::string TriggerModel::name() const {
  return std::visit(Overloaded{
                        [](const AsapParams&) -> std::string { return "asap"; },
                        [](const AlapParams&) -> std::string { return "alap"; },
                        [](const ProbaThresholdParams&) -> std::string { return "proba_threshold"; },
                        [](const StoppingRuleParams&) -> std::string { return "stopping_rule"; },
                        [](const EconomyParams& p) -> std::string {
                          return p.myopic ? "economy_myopic" : "economy";
                        },
                        [](const EcecParams&) -> std::string { return "ecec"; },
                        [](const CalimeraParams& p) -> std::string {
                          return p.myopic ? "calimera_myopic" : "calimera";
                        },
                    },
                    params_);
}

Action decide_proba_threshold(std::span<const double> probs, double theta) {
  return *std::max_element(probs.begin(), probs.end()) >= theta ? Action::Halt : Action::Wait;
}

Action decide_stopping_rule(double p1, double p2, Timestamp t, Timestamp series_length,
                            const std::array<double, 3>& gamma) {
  const double fraction = static_cast<double>(t) / static_cast<double>(series_length);
  return gamma[0] * p1 + gamma[1] * p2 + gamma[2] * fraction > 0.0 ? Action::Halt : Action::Wait;
}

double ecec_confidence(std::span<const ClassLabel> predictions,
                       std::span<const std::vector<double>> precision) {
  if (predictions.empty() || predictions.size() > precision.size()) {
    throw PreconditionError("ecec_confidence: need one precision row per prediction");
  }
  const ClassLabel current = predictions.back();
  double miss = 1.0;
  for (std::size_t tau = 0; tau < predictions.size(); ++tau) {
    if (predictions[tau] == current) miss *= 1.0 - precision[tau].at(current);
  }
  return 1.0 - miss;
}

std::size_t economy_group(std::span<const double> edges, double max_prob) {
  std::size_t g = 0;
  for (double e : edges) g += max_prob > e ? 1 : 0;
  return g;
}

std::vector<double> economy_expected_costs(const EconomyParams& params, const CostModel& cost,
                                           const SampledTimeline& timeline, std::size_t group,
                                           std::size_t t_index) {
  const std::size_t steps = params.group_misclassification.size();
  if (steps != timeline.size() || t_index >= steps || group >= params.k) {
    throw PreconditionError("economy_expected_costs: index out of range");
  }
  const std::size_t last = params.myopic ? std::min(t_index + 1, steps - 1) : steps - 1;
  std::vector<double> reach(params.k, 0.0);
  reach[group] = 1.0;
  std::vector<double> out;
  out.reserve(last - t_index + 1);
  const double alpha = cost.alpha();
  for (std::size_t tau = t_index;; ++tau) {
    double mis = 0.0;
    for (std::size_t j = 0; j < params.k; ++j) mis += reach[j] * params.group_misclassification[tau][j];
    out.push_back(alpha * mis + (1.0 - alpha) * cost.delay_cost(timeline[tau], timeline.series_length()));
    if (tau == last) break;
    std::vector<double> next(params.k, 0.0);
    const auto& m = params.transitions[tau];
    for (std::size_t i = 0; i < params.k; ++i) {
      if (reach[i] == 0.0) continue;
      for (std::size_t j = 0; j < params.k; ++j) next[j] += reach[i] * m[i][j];
    }
    reach = std::move(next);
  }
  return out;
}

Action halt_on_expected_costs(std::span<const double> costs, bool myopic) {
  if (costs.size() <= 1) return Action::Halt;
  if (myopic) return costs[0] <= costs[1] ? Action::Halt : Action::Wait;
  const double future = *std::min_element(costs.begin() + 1, costs.end());
  return costs[0] <= future ? Action::Halt : Action::Wait;
}

std::vector<double> calimera_targets(std::span<const double> realized_costs, bool myopic) {
  const std::size_t n = realized_costs.size();
  if (n < 2) return {};
  std::vector<double> delta(n - 1);
  // best[tau]: min over tau' > tau, filled backwards
  double best = realized_costs[n - 1];
  for (std::size_t tau = n - 1; tau-- > 0;) {
    const double next = realized_costs[tau + 1];
    best = std::min(best, next);
    delta[tau] = realized_costs[tau] - (myopic ? next : best);
  }
  return delta;
}

std::vector<double> calimera_input(std::span<const double> probs, Timestamp t, Timestamp series_length) {
  std::vector<double> x(probs.begin(), probs.end());
  x.push_back(static_cast<double>(t) / static_cast<double>(series_length));
  return x;
}

Action TriggerModel::decide(const TraceView& view) const {
  if (view.at_last()) return Action::Halt;
  const std::size_t i = view.current_index();
  return std::visit(
      Overloaded{
          [](const AsapParams&) { return Action::Halt; },
          [](const AlapParams&) { return Action::Wait; },
          [&](const ProbaThresholdParams& p) { return decide_proba_threshold(view.current_row(), p.theta); },
          [&](const StoppingRuleParams& p) {
            const TopTwo top = top_two(view.current_row());
            return decide_stopping_rule(top.largest, top.margin, view.current_time(), view.series_length(),
                                        p.gamma);
          },
          [&](const EconomyParams& p) {
            const auto row = view.current_row();
            const std::size_t group = economy_group(p.bin_edges.at(i), *std::max_element(row.begin(), row.end()));
            return halt_on_expected_costs(economy_expected_costs(p, cost_, view.timeline(), group, i), p.myopic);
          },
          [&](const EcecParams& p) {
            std::vector<ClassLabel> predictions(i + 1);
            for (std::size_t tau = 0; tau <= i; ++tau) predictions[tau] = argmax(view.row(tau));
            return ecec_confidence(predictions, p.precision) >= p.gamma ? Action::Halt : Action::Wait;
          },
          [&](const CalimeraParams& p) {
            const double delta =
                p.regressors.at(i).predict(calimera_input(view.current_row(), view.current_time(), view.series_length()));
            return delta <= 0.0 ? Action::Halt : Action::Wait;
          },
      },
      params_);
}

}  // namespace ects

namespace ects {

Decision simulate_online(const TriggerModel& model, const ProbTrace& trace, AccessProbe* probe) {
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceView view(trace, i, probe);
    if (model.decide(view) == Action::Halt) {
      return {argmax(view.current_row()), view.current_time(), i};
    }
  }
  // decide() halts at the last index, so this is unreachable
  throw NumericError("simulate_online: policy never halted");
}

TriggerModel make_myopic(const TriggerModel& model) {
  if (const auto* economy = std::get_if<EconomyParams>(&model.params())) {
    EconomyParams p = *economy;
    p.myopic = true;
    return TriggerModel(std::move(p), model.cost());
  }
  if (const auto* calimera = std::get_if<CalimeraParams>(&model.params())) {
    std::vector<std::vector<std::vector<double>>> inputs;
    inputs.reserve(calimera->regressors.size());
    for (const auto& r : calimera->regressors) inputs.push_back(r.support());
    return TriggerModel(calimera_from_costs(std::move(inputs), calimera->realized_costs, calimera->lambda,
                                            calimera->bandwidth, true),
                        model.cost());
  }
  throw PreconditionError("make_myopic: only economy and calimera models have a myopic variant, got '" +
                          model.name() + "'");
}

}  // namespace ects
