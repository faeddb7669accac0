#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ects {

// Costs of each method on each dataset; NaN marks a missing cell.
struct CostTable {
  std::vector<std::string> datasets;
  std::vector<std::string> methods;
  std::vector<std::vector<double>> values;  // [dataset][method]
};

// Ascending ranks (1 = lowest cost), ties share their average rank.
std::vector<double> average_ranks(std::span<const double> costs);

// Per-dataset rank rows; throws PreconditionError naming the first missing cell.
std::vector<std::vector<double>> dataset_ranks(const CostTable& table);

// Per-method mean of dataset_ranks.
std::vector<double> mean_ranks(const CostTable& table);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

// Percentile bootstrap interval for the mean. Resample r draws from its own
// generator seeded by derive_seed(seed, r).
Interval bootstrap_mean_ci(std::span<const double> values, double level = 0.9,
                           std::size_t resamples = 10000, std::uint64_t seed = 0);

struct WilcoxonResult {
  std::size_t n = 0;  // non-zero differences
  double w_plus = 0.0;
  double w_minus = 0.0;
  double statistic = 0.0;  // min(w_plus, w_minus)
  double p_two_sided = 1.0;
  double p_less = 1.0;     // P(W+ <= observed): differences tend negative
  double p_greater = 1.0;  // P(W+ >= observed): differences tend positive
  bool exact = true;
};

inline constexpr std::size_t kWilcoxonExactMaxN = 12;

// Signed-rank test on paired differences. Zeros are dropped and tied
// magnitudes get average ranks. Up to 12 differences the null distribution is
// counted exactly over all 2^n sign assignments; beyond that a normal
// approximation with tie and continuity corrections is used. With no
// non-zero difference every p is 1.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> diffs);

// Holm step-down adjusted p-values, in input order.
std::vector<double> holm_adjust(std::span<const double> p_values);

struct PairwiseResult {
  std::size_t wins = 0;    // a < b
  std::size_t ties = 0;
  std::size_t losses = 0;  // a > b
  double p_value = 1.0;    // two-sided Wilcoxon on a - b
};

PairwiseResult pairwise_comparison(std::span<const double> costs_a, std::span<const double> costs_b);

}  // namespace ects
