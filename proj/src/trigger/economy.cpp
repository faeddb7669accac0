#include <algorithm>
#include <limits>
#include <string>

#include "ects/error.hpp"
#include "ects/trigger/fit.hpp"

namespace ects {
namespace {

// Add-`pseudo` smoothed conditional; uniform when the row is empty and unsmoothed.
double smoothed(double count, double total, double pseudo, std::size_t outcomes) {
  const double denom = total + pseudo * static_cast<double>(outcomes);
  return denom > 0.0 ? (count + pseudo) / denom : 1.0 / static_cast<double>(outcomes);
}

}  // namespace

std::optional<EconomyParams> build_economy(const TriggerTrainSet& train, const CostModel& cost,
                                           std::size_t k, double pseudo_count) {
  if (k < 1 || k > 20) throw PreconditionError("economy: k must lie in [1, 20]");
  if (!(pseudo_count >= 0.0)) throw PreconditionError("economy: pseudo count must be >= 0");
  const std::size_t n = train.size();
  const std::size_t steps = train.timeline().size();
  const std::size_t num_classes = train.num_classes();
  if (k > n) return std::nullopt;

  EconomyParams p;
  p.k = k;
  p.pseudo_count = pseudo_count;
  p.bin_edges.resize(steps);
  std::vector<std::vector<std::size_t>> group(n, std::vector<std::size_t>(steps));
  for (std::size_t tau = 0; tau < steps; ++tau) {
    std::vector<double> max_prob(n);
    for (std::size_t s = 0; s < n; ++s) {
      const auto row = train.trace(s).row(tau);
      max_prob[s] = *std::max_element(row.begin(), row.end());
    }
    std::vector<double> sorted = max_prob;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t j = 1; j < k; ++j) {
      const std::size_t cut = j * n / k;
      p.bin_edges[tau].push_back((sorted[cut - 1] + sorted[cut]) / 2.0);
    }
    std::vector<bool> occupied(k, false);
    for (std::size_t s = 0; s < n; ++s) {
      group[s][tau] = economy_group(p.bin_edges[tau], max_prob[s]);
      occupied[group[s][tau]] = true;
    }
    if (std::find(occupied.begin(), occupied.end(), false) != occupied.end()) return std::nullopt;
  }

  p.transitions.assign(steps - 1, std::vector<std::vector<double>>(k, std::vector<double>(k)));
  for (std::size_t tau = 0; tau + 1 < steps; ++tau) {
    std::vector<std::vector<double>> counts(k, std::vector<double>(k, 0.0));
    for (std::size_t s = 0; s < n; ++s) counts[group[s][tau]][group[s][tau + 1]] += 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      double row_total = 0.0;
      for (double c : counts[i]) row_total += c;
      for (std::size_t j = 0; j < k; ++j) {
        p.transitions[tau][i][j] = smoothed(counts[i][j], row_total, pseudo_count, k);
      }
    }
  }

  p.confusion_counts.assign(
      steps, std::vector<std::vector<std::vector<double>>>(
                 k, std::vector<std::vector<double>>(num_classes, std::vector<double>(num_classes, 0.0))));
  for (std::size_t tau = 0; tau < steps; ++tau) {
    for (std::size_t s = 0; s < n; ++s) {
      p.confusion_counts[tau][group[s][tau]][train.label(s)][argmax(train.trace(s).row(tau))] += 1.0;
    }
  }

  p.group_misclassification.assign(steps, std::vector<double>(k, 0.0));
  for (std::size_t tau = 0; tau < steps; ++tau) {
    for (std::size_t g = 0; g < k; ++g) {
      const auto& m = p.confusion_counts[tau][g];
      std::vector<double> per_true(num_classes, 0.0);
      double group_total = 0.0;
      for (std::size_t y = 0; y < num_classes; ++y) {
        for (double c : m[y]) per_true[y] += c;
        group_total += per_true[y];
      }
      double expected = 0.0;
      for (std::size_t y = 0; y < num_classes; ++y) {
        const double p_y = smoothed(per_true[y], group_total, pseudo_count, num_classes);
        double inner = 0.0;
        for (std::size_t yhat = 0; yhat < num_classes; ++yhat) {
          inner += smoothed(m[y][yhat], per_true[y], pseudo_count, num_classes) *
                   cost.misclassification_cost(yhat, y);
        }
        expected += p_y * inner;
      }
      p.group_misclassification[tau][g] = expected;
    }
  }
  return p;
}

TriggerModel fit_economy(const TriggerTrainSet& train, const CostModel& cost,
                         const std::vector<std::size_t>& k_grid, double pseudo_count) {
  std::vector<std::size_t> grid = k_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const auto realized = realized_cost_table(train, cost);
  const auto& timeline = train.timeline();
  const std::size_t steps = timeline.size();
  std::optional<EconomyParams> best;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> halts(train.size());
  for (std::size_t k : grid) {
    auto params = build_economy(train, cost, k, pseudo_count);
    if (!params) continue;
    // the decision depends only on (tau, group): tabulate it once
    std::vector<std::vector<bool>> halt(steps, std::vector<bool>(k));
    for (std::size_t tau = 0; tau < steps; ++tau) {
      for (std::size_t g = 0; g < k; ++g) {
        halt[tau][g] = halt_on_expected_costs(economy_expected_costs(*params, cost, timeline, g, tau),
                                              params->myopic) == Action::Halt;
      }
    }
    for (std::size_t s = 0; s < train.size(); ++s) {
      halts[s] = steps - 1;
      for (std::size_t tau = 0; tau + 1 < steps; ++tau) {
        const auto row = train.trace(s).row(tau);
        if (halt[tau][economy_group(params->bin_edges[tau], *std::max_element(row.begin(), row.end()))]) {
          halts[s] = tau;
          break;
        }
      }
    }
    const double c = mean_cost_of_halts(realized, halts);
    if (c < best_cost) {
      best_cost = c;
      best = std::move(params);
    }
  }
  if (!best) {
    throw DataError("fit_economy: no k in the grid leaves every confidence bin non-empty (" +
                    std::to_string(train.size()) + " trigger-train series)");
  }
  return TriggerModel(std::move(*best), cost);
}

}  // namespace ects
