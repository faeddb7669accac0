#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"

#include "ects/core/cost.hpp"
#include "ects/core/rng.hpp"
#include "ects/core/types.hpp"
#include "ects/error.hpp"

using namespace ects;

TEST_CASE("delay cost curves") {
  const auto lin = CostModel::standard(2, 0.5);
  const auto exp = CostModel::anomaly(2, 1, 0.5);
  CHECK(lin.delay_cost(10, 10) == 1.0);
  CHECK(lin.delay_cost(3, 10) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(exp.delay_cost(5, 10) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(exp.delay_cost(10, 10) == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(delay_curve(DelayCurve::Exponential, 0.0) == 1.0);
  CHECK(std::abs(exp.delay_cost(10, 10) / delay_curve(DelayCurve::Exponential, 0.0) - 100.0) < 1e-9);
  CHECK_THROWS_AS(lin.delay_cost(0, 10), PreconditionError);
  CHECK_THROWS_AS(lin.delay_cost(11, 10), PreconditionError);
}

TEST_CASE("delay cost is non-decreasing in t") {
  for (const auto& model : {CostModel::standard(3, 0.3), CostModel::anomaly(2, 0, 0.3)}) {
    for (Timestamp T : {2, 7, 15, 100}) {
      for (Timestamp t = 1; t < T; ++t) CHECK(model.delay_cost(t, T) <= model.delay_cost(t + 1, T));
    }
  }
}

TEST_CASE("misclassification matrices") {
  const auto standard = CostModel::standard(3, 0.5);
  for (ClassLabel a = 0; a < 3; ++a) {
    for (ClassLabel b = 0; b < 3; ++b) CHECK(standard.misclassification_cost(a, b) == (a == b ? 0.0 : 1.0));
  }
  const auto anomaly = CostModel::anomaly(2, 1, 0.5);
  CHECK(anomaly.misclassification_cost(0, 1) == 100.0);  // missed anomaly
  CHECK(anomaly.misclassification_cost(1, 0) == 1.0);    // false alarm
  CHECK(anomaly.misclassification_cost(1, 1) == 0.0);
  CHECK_THROWS_AS(standard.misclassification_cost(3, 0), PreconditionError);
  CHECK_THROWS_AS(standard.misclassification_cost(0, 3), PreconditionError);
}

TEST_CASE("loss and weighted loss examples") {
  const auto standard = CostModel::standard(2, 0.5);
  CHECK(standard.loss(1, 0, 5, 10) == doctest::Approx(1.5));
  CHECK(standard.loss(0, 0, 10, 10) == 1.0);
  CHECK(CostModel::anomaly(2, 1, 0.5).loss(0, 1, 10, 10) == doctest::Approx(200.0).epsilon(1e-12));

  CHECK(standard.with_alpha(0.0).weighted_loss(1, 0, 5, 10) == doctest::Approx(0.5));
  CHECK(standard.with_alpha(1.0).weighted_loss(1, 0, 5, 10) == 1.0);
  CHECK(standard.weighted_loss(1, 0, 10, 10) == 1.0);
}

TEST_CASE("standard weighted loss stays in [0, 1] and doubles to the loss at alpha 0.5") {
  for (int a = 0; a <= 20; ++a) {
    const auto model = CostModel::standard(3, a / 20.0);
    for (ClassLabel p = 0; p < 3; ++p) {
      for (ClassLabel y = 0; y < 3; ++y) {
        for (Timestamp t = 1; t <= 12; ++t) {
          const double w = model.weighted_loss(p, y, t, 12);
          CHECK(w >= 0.0);
          CHECK(w <= 1.0);
          if (a == 10) CHECK(std::abs(2.0 * w - model.loss(p, y, t, 12)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("cost model validation") {
  CHECK_THROWS_AS(CostModel({{0, 1}, {1, 1}}, DelayCurve::Linear, 0.5), PreconditionError);
  CHECK_THROWS_AS(CostModel({{0, -1}, {1, 0}}, DelayCurve::Linear, 0.5), PreconditionError);
  CHECK_THROWS_AS(CostModel({{0, 1}, {1, 0}}, DelayCurve::Linear, 1.5), PreconditionError);
  CHECK_THROWS_AS(CostModel({{0, 1, 1}, {1, 0, 1}}, DelayCurve::Linear, 0.5), PreconditionError);
  CHECK_THROWS_AS(CostModel::anomaly(2, 2, 0.5), PreconditionError);
  CHECK(CostModel::standard(2, 0.3).with_alpha(0.7).alpha() == 0.7);
}

TEST_CASE("sampled timeline invariants") {
  CHECK_NOTHROW(SampledTimeline({1, 5, 10}, 10));
  CHECK_THROWS_AS(SampledTimeline({}, 10), PreconditionError);
  CHECK_THROWS_AS(SampledTimeline({1, 5, 9}, 10), PreconditionError);
  CHECK_THROWS_AS(SampledTimeline({1, 5, 5, 10}, 10), PreconditionError);
  CHECK_THROWS_AS(SampledTimeline({0, 5, 10}, 10), PreconditionError);
  CHECK_THROWS_AS(SampledTimeline({6, 5, 10}, 10), PreconditionError);
  const SampledTimeline tl({2, 4, 10}, 10);
  CHECK(tl.index_of(4) == 1u);
  CHECK(!tl.index_of(3).has_value());
  CHECK(tl.last_index() == 2u);
}

TEST_CASE("series validation") {
  CHECK_NOTHROW(validate_series({"a", {1.0, 2.0}, 1}, 2));
  CHECK_THROWS_AS(validate_series({"a", {1.0}, 0}, 2), DataError);
  CHECK_THROWS_AS(validate_series({"a", {1.0, 2.0}, 2}, 2), DataError);
  CHECK_THROWS_AS(validate_series({"a", {1.0, NAN}, 0}, 2), DataError);
}

TEST_CASE("rng is deterministic and splits are independent") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(42);
  auto s1 = c.split("left");
  auto s2 = c.split("right");
  CHECK(s1.next_u64() != s2.next_u64());
  CHECK(c.split("left").next_u64() == Rng(42).split("left").next_u64());
  CHECK(derive_seed(1, 2) != derive_seed(2, 1));
}

TEST_CASE("rng helpers") {
  Rng rng(7);
  std::vector<int> hits(5, 0);
  for (int i = 0; i < 5000; ++i) {
    const auto v = rng.below(5);
    REQUIRE(v < 5);
    ++hits[v];
  }
  for (int h : hits) CHECK(h > 800);

  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.02);

  std::vector<int> items{0, 1, 2, 3, 4, 5, 6, 7};
  rng.shuffle(std::span(items));
  std::vector<int> sorted = items;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});

  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
