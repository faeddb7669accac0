#include "ects/stats/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ects/core/rng.hpp"
#include "ects/data/transform.hpp"
#include "ects/error.hpp"

namespace ects {

std::vector<double> average_ranks(std::span<const double> costs) {
  const std::size_t n = costs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && costs[order[j + 1]] == costs[order[i]]) ++j;
    const double avg = static_cast<double>(i + j + 2) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

std::vector<std::vector<double>> dataset_ranks(const CostTable& table) {
  if (table.values.size() != table.datasets.size()) {
    throw PreconditionError("mean_ranks: one row per dataset required");
  }
  std::vector<std::vector<double>> out;
  out.reserve(table.values.size());
  for (std::size_t d = 0; d < table.values.size(); ++d) {
    const auto& row = table.values[d];
    if (row.size() != table.methods.size()) throw PreconditionError("mean_ranks: one column per method required");
    for (std::size_t m = 0; m < row.size(); ++m) {
      if (std::isnan(row[m])) {
        throw PreconditionError("mean_ranks: missing cost for dataset '" + table.datasets[d] + "', method '" +
                                table.methods[m] + "'");
      }
    }
    out.push_back(average_ranks(row));
  }
  return out;
}

std::vector<double> mean_ranks(const CostTable& table) {
  const auto ranks = dataset_ranks(table);
  if (ranks.empty()) throw PreconditionError("mean_ranks: no datasets");
  std::vector<double> mean(table.methods.size(), 0.0);
  for (const auto& row : ranks) {
    for (std::size_t m = 0; m < row.size(); ++m) mean[m] += row[m];
  }
  for (double& v : mean) v /= static_cast<double>(ranks.size());
  return mean;
}

Interval bootstrap_mean_ci(std::span<const double> values, double level, std::size_t resamples, std::uint64_t seed) {
  if (values.empty()) throw PreconditionError("bootstrap_mean_ci: no values");
  if (!(level > 0.0 && level < 1.0)) throw PreconditionError("bootstrap_mean_ci: level must lie in (0, 1)");
  if (resamples == 0) throw PreconditionError("bootstrap_mean_ci: need at least one resample");
  const std::size_t n = values.size();
  // Summing offsets from a pivot keeps a constant list exactly degenerate.
  const double pivot = values[0];
  std::vector<double> means(resamples);
  for (std::size_t r = 0; r < resamples; ++r) {
    Rng rng(derive_seed(seed, r));
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += values[rng.below(n)] - pivot;
    means[r] = pivot + total / static_cast<double>(n);
  }
  return {quantile(means, (1.0 - level) / 2.0), quantile(means, (1.0 + level) / 2.0)};
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> diffs) {
  std::vector<double> nonzero;
  for (double d : diffs) {
    if (d != 0.0) nonzero.push_back(d);
  }
  WilcoxonResult r;
  r.n = nonzero.size();
  if (r.n == 0) return r;

  std::vector<double> magnitude(r.n);
  for (std::size_t i = 0; i < r.n; ++i) magnitude[i] = std::abs(nonzero[i]);
  const auto ranks = average_ranks(magnitude);
  for (std::size_t i = 0; i < r.n; ++i) (nonzero[i] > 0.0 ? r.w_plus : r.w_minus) += ranks[i];
  r.statistic = std::min(r.w_plus, r.w_minus);

  if (r.n <= kWilcoxonExactMaxN) {
    // Average ranks are multiples of 1/2, so doubled ranks are integers and the
    // null distribution of 2 W+ is a subset-sum count over all 2^n sign patterns.
    std::vector<std::size_t> doubled(r.n);
    std::size_t total = 0;
    for (std::size_t i = 0; i < r.n; ++i) {
      doubled[i] = static_cast<std::size_t>(std::llround(2.0 * ranks[i]));
      total += doubled[i];
    }
    std::vector<double> ways(total + 1, 0.0);
    ways[0] = 1.0;
    for (std::size_t v : doubled) {
      for (std::size_t s = total; s >= v; --s) {
        ways[s] += ways[s - v];
        if (s == v) break;
      }
    }
    const auto observed = static_cast<std::size_t>(std::llround(2.0 * r.w_plus));
    const double patterns = std::ldexp(1.0, static_cast<int>(r.n));
    double below = 0.0;
    double above = 0.0;
    for (std::size_t s = 0; s <= total; ++s) {
      if (s <= observed) below += ways[s];
      if (s >= observed) above += ways[s];
    }
    r.p_less = below / patterns;
    r.p_greater = above / patterns;
    r.exact = true;
  } else {
    const double n = static_cast<double>(r.n);
    double tie_term = 0.0;
    std::vector<double> sorted = magnitude;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i + 1);
      tie_term += t * t * t - t;
      i = j + 1;
    }
    const double mean = n * (n + 1.0) / 4.0;
    const double sd = std::sqrt(n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0);
    const auto upper_tail = [](double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); };
    r.p_greater = upper_tail((r.w_plus - mean - 0.5) / sd);
    r.p_less = 1.0 - upper_tail((r.w_plus - mean + 0.5) / sd);
    r.exact = false;
  }
  r.p_two_sided = std::min(1.0, 2.0 * std::min(r.p_less, r.p_greater));
  return r;
}

std::vector<double> holm_adjust(std::span<const double> p_values) {
  const std::size_t m = p_values.size();
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("holm_adjust: p-values must lie in [0, 1]");
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
  std::vector<double> adjusted(m);
  double running = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double scaled = std::min(1.0, static_cast<double>(m - j) * p_values[order[j]]);
    running = std::max(running, scaled);
    adjusted[order[j]] = running;
  }
  return adjusted;
}

PairwiseResult pairwise_comparison(std::span<const double> costs_a, std::span<const double> costs_b) {
  if (costs_a.size() != costs_b.size()) throw PreconditionError("pairwise_comparison: dataset lists differ in length");
  PairwiseResult r;
  std::vector<double> diffs(costs_a.size());
  for (std::size_t i = 0; i < costs_a.size(); ++i) {
    if (costs_a[i] < costs_b[i]) {
      ++r.wins;
    } else if (costs_a[i] > costs_b[i]) {
      ++r.losses;
    } else {
      ++r.ties;
    }
    diffs[i] = costs_a[i] - costs_b[i];
  }
  r.p_value = wilcoxon_signed_rank(diffs).p_two_sided;
  return r;
}

}  // namespace ects
