#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "ects/core/rng.hpp"
#include "ects/error.hpp"
#include "ects/stats/stats.hpp"

using namespace ects;

namespace {

// Two-sided p by listing every sign assignment of the ranked magnitudes.
double enumerated_p(std::vector<double> diffs) {
  diffs.erase(std::remove(diffs.begin(), diffs.end(), 0.0), diffs.end());
  const std::size_t n = diffs.size();
  if (n == 0) return 1.0;
  std::vector<double> mags(n);
  for (std::size_t i = 0; i < n; ++i) mags[i] = std::abs(diffs[i]);
  const auto ranks = average_ranks(mags);
  double observed = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (diffs[i] > 0) observed += ranks[i];
  double le = 0, ge = 0;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1ul) w += ranks[i];
    le += w <= observed + 1e-9;
    ge += w >= observed - 1e-9;
  }
  const double total = double(1ul << n);
  return std::min(1.0, 2 * std::min(le / total, ge / total));
}

}  // namespace

TEST_CASE("average ranks") {
  CHECK(average_ranks(std::vector<double>{0.1, 0.2, 0.3}) == std::vector<double>{1, 2, 3});
  CHECK(average_ranks(std::vector<double>{0.1, 0.1, 0.3}) == std::vector<double>{1.5, 1.5, 3});
  CHECK(average_ranks(std::vector<double>{0.3, 0.1, 0.3, 0.3}) == std::vector<double>{3, 1, 3, 3});
}

TEST_CASE("mean ranks") {
  CostTable t{{"d1", "d2"}, {"A", "B", "C"}, {{0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}}};
  CHECK(mean_ranks(t) == std::vector<double>{1, 2, 3});
  t.values = {{0.1, 0.1, 0.3}, {0.2, 0.1, 0.3}};
  CHECK(mean_ranks(t) == std::vector<double>{1.75, 1.25, 3});
  CostTable single{{"d"}, {"A", "B"}, {{0.5, 0.2}}};
  CHECK(mean_ranks(single) == std::vector<double>{2, 1});

  t.values[1][2] = NAN;
  try {
    mean_ranks(t);
    FAIL("expected an error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("d2") != std::string::npos);
    CHECK(std::string(e.what()).find("C") != std::string::npos);
  }
}

TEST_CASE("ranks depend only on order and sum to m(m+1)/2") {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 2 + rng.below(8);
    CostTable t;
    for (std::size_t j = 0; j < m; ++j) t.methods.push_back("m" + std::to_string(j));
    for (int d = 0; d < 5; ++d) {
      t.datasets.push_back("d" + std::to_string(d));
      std::vector<double> row(m);
      for (auto& v : row) v = double(rng.below(5)) / 4.0;
      t.values.push_back(row);
    }
    for (const auto& r : dataset_ranks(t)) {
      double total = 0.0;
      for (double v : r) total += v;
      CHECK(total == doctest::Approx(double(m * (m + 1)) / 2));
    }
    CostTable warped = t;
    for (auto& row : warped.values)
      for (auto& v : row) v = std::exp(3 * v) - 7;
    CHECK(mean_ranks(warped) == mean_ranks(t));
  }
}

TEST_CASE("bootstrap intervals") {
  const std::vector<double> constant(25, 0.7);
  const auto c = bootstrap_mean_ci(constant, 0.9, 1000, 3);
  CHECK(c.low == 0.7);
  CHECK(c.high == 0.7);

  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(1 + rng.below(30));
    for (auto& x : v) x = rng.normal();
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= double(v.size());
    const auto ci = bootstrap_mean_ci(v, 0.9, 2000, trial);
    CHECK(ci.low <= mean + 1e-12);
    CHECK(ci.high >= mean - 1e-12);
    const auto again = bootstrap_mean_ci(v, 0.9, 2000, trial);
    CHECK(again.low == ci.low);
    CHECK(again.high == ci.high);
  }

  std::vector<double> small(10), large(1000);
  for (auto& x : small) x = 1.0 + rng.normal();
  for (auto& x : large) x = 1.0 + rng.normal();
  const auto ws = bootstrap_mean_ci(small, 0.9, 2000, 5);
  const auto wl = bootstrap_mean_ci(large, 0.9, 2000, 5);
  CHECK(wl.high - wl.low < ws.high - ws.low);

  CHECK_THROWS_AS(bootstrap_mean_ci(std::vector<double>{}, 0.9, 10, 0), PreconditionError);
  CHECK_THROWS_AS(bootstrap_mean_ci(constant, 1.0, 10, 0), PreconditionError);
}

TEST_CASE("wilcoxon examples") {
  const auto all_positive = wilcoxon_signed_rank(std::vector<double>{1, 2, 3, 4, 5});
  CHECK(all_positive.exact);
  CHECK(all_positive.n == 5);
  CHECK(all_positive.w_plus == 15.0);
  CHECK(all_positive.statistic == 0.0);
  CHECK(all_positive.p_greater == doctest::Approx(1.0 / 32));
  CHECK(all_positive.p_two_sided == doctest::Approx(0.0625));

  const auto symmetric = wilcoxon_signed_rank(std::vector<double>{1, -1, 2, -2});
  CHECK(symmetric.w_plus == symmetric.w_minus);
  CHECK(symmetric.p_two_sided == 1.0);

  const auto zeros = wilcoxon_signed_rank(std::vector<double>{0, 0, 0});
  CHECK(zeros.n == 0);
  CHECK(zeros.p_two_sided == 1.0);
  CHECK(wilcoxon_signed_rank(std::vector<double>{0.4}).p_two_sided == 1.0);
}

TEST_CASE("wilcoxon exact p equals the enumeration oracle and lies on the 2^-n grid") {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> d(1 + rng.below(12));
    for (auto& x : d) x = double(static_cast<int>(rng.below(9)) - 4);  // ties and zeros on purpose
    const auto r = wilcoxon_signed_rank(d);
    CHECK(r.exact);
    CHECK(std::abs(r.p_two_sided - enumerated_p(d)) < 1e-12);
    if (r.n > 0) {
      const double scaled = r.p_less * std::pow(2.0, double(r.n));
      CHECK(std::abs(scaled - std::round(scaled)) < 1e-6);
    }
  }
}

TEST_CASE("wilcoxon normal approximation beyond twelve") {
  Rng rng(4);
  std::vector<double> shifted(40);
  for (auto& x : shifted) x = rng.normal() + 1.0;
  const auto r = wilcoxon_signed_rank(shifted);
  CHECK(!r.exact);
  CHECK(r.p_two_sided < 1e-4);

  // at n = 13 the approximation lands near the exact answer
  std::vector<double> d{1, -2, 3, 4, -5, 6, 7, 8, -9, 10, 11, 12, 13};
  const auto approx = wilcoxon_signed_rank(d);
  CHECK(!approx.exact);
  CHECK(std::abs(approx.p_two_sided - enumerated_p(d)) < 0.01);
}

TEST_CASE("holm adjustment") {
  CHECK(holm_adjust(std::vector<double>{0.01, 0.04}) == std::vector<double>{0.02, 0.04});
  CHECK(holm_adjust(std::vector<double>{0.3}) == std::vector<double>{0.3});
  CHECK(holm_adjust(std::vector<double>{0.6, 0.9}) == std::vector<double>{1.0, 1.0});
  CHECK(holm_adjust(std::vector<double>{0.04, 0.01}) == std::vector<double>{0.04, 0.02});

  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> p(1 + rng.below(10));
    for (auto& x : p) x = rng.uniform();
    const auto adj = holm_adjust(p);
    std::vector<std::size_t> order(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return p[a] < p[b]; });
    double running = 0.0;
    for (std::size_t j = 0; j < order.size(); ++j) {
      running = std::max(running, std::min(1.0, double(p.size() - j) * p[order[j]]));
      CHECK(adj[order[j]] == doctest::Approx(running).epsilon(1e-15));
      CHECK(adj[order[j]] >= p[order[j]]);
      if (j > 0) CHECK(adj[order[j]] >= adj[order[j - 1]]);
    }
  }
}

TEST_CASE("pairwise comparison") {
  const std::vector<double> a{0.1, 0.2, 0.3, 0.4, 0.5};
  const auto same = pairwise_comparison(a, a);
  CHECK(same.ties == 5);
  CHECK(same.p_value == 1.0);
  const std::vector<double> b{0.2, 0.3, 0.4, 0.5, 0.6};
  const auto better = pairwise_comparison(a, b);
  CHECK(better.wins == 5);
  CHECK(better.losses == 0);
  CHECK(better.p_value == doctest::Approx(0.0625));
  const auto one = pairwise_comparison(std::vector<double>{0.1}, std::vector<double>{0.3});
  CHECK(one.wins == 1);
  CHECK(one.p_value == 1.0);
  CHECK_THROWS_AS(pairwise_comparison(a, std::vector<double>{0.1}), PreconditionError);
}
