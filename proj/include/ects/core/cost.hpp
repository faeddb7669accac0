#pragma once

#include <cstddef>
#include <vector>

#include "ects/core/types.hpp"

namespace ects {

enum class DelayCurve { Linear, Exponential };

// Prices a decision: misclassification matrix indexed [predicted][true],
// a delay curve over t/T, and the trade-off weight alpha that the weighted
// costs use (alpha on misclassification, 1 - alpha on delay).
class CostModel {
 public:
  CostModel(std::vector<std::vector<double>> mis_matrix, DelayCurve delay, double alpha);

  // 0/1 matrix, linear delay.
  static CostModel standard(std::size_t num_classes, double alpha);

  // Missing `anomaly_class` costs 100, every other error costs 1; exponential delay.
  static CostModel anomaly(std::size_t num_classes, ClassLabel anomaly_class, double alpha);

  CostModel with_alpha(double alpha) const;

  std::size_t num_classes() const { return matrix_.size(); }
  const std::vector<std::vector<double>>& mis_matrix() const { return matrix_; }
  DelayCurve delay() const { return delay_; }
  double alpha() const { return alpha_; }

  // Unweighted delay cost C_d(t); requires 1 <= t <= T.
  double delay_cost(Timestamp t, Timestamp series_length) const;

  // C_m(predicted | truth).
  double misclassification_cost(ClassLabel predicted, ClassLabel truth) const;

  // C_m + C_d, unweighted.
  double loss(ClassLabel predicted, ClassLabel truth, Timestamp t, Timestamp series_length) const;

  // alpha * C_m + (1 - alpha) * C_d.
  double weighted_loss(ClassLabel predicted, ClassLabel truth, Timestamp t,
                       Timestamp series_length) const;

  bool operator==(const CostModel&) const = default;

 private:
  std::vector<std::vector<double>> matrix_;
  DelayCurve delay_;
  double alpha_;
};

// The delay curve evaluated at a fraction of the series in [0, 1].
// Linear: fraction. Exponential: exp(fraction * ln 100), so 1 at 0 and 100 at 1.
double delay_curve(DelayCurve curve, double fraction);

}  // namespace ects
