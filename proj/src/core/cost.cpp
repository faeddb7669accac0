#include "ects/core/cost.hpp"

#include <cmath>
#include <string>

#include "ects/error.hpp"

namespace ects {

double delay_curve(DelayCurve curve, double fraction) {
  switch (curve) {
    case DelayCurve::Linear:
      return fraction;
    case DelayCurve::Exponential:
      return std::exp(fraction * std::log(100.0));
  }
  return fraction;
}

CostModel::CostModel(std::vector<std::vector<double>> mis_matrix, DelayCurve delay, double alpha)
    : matrix_(std::move(mis_matrix)), delay_(delay), alpha_(alpha) {
  if (matrix_.size() < 2) throw PreconditionError("cost model: need at least two classes");
  for (std::size_t i = 0; i < matrix_.size(); ++i) {
    if (matrix_[i].size() != matrix_.size()) {
      throw PreconditionError("cost model: misclassification matrix must be square");
    }
    for (double v : matrix_[i]) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw PreconditionError("cost model: misclassification costs must be finite and >= 0");
      }
    }
    if (matrix_[i][i] != 0.0) throw PreconditionError("cost model: diagonal must be zero");
  }
  if (!(alpha_ >= 0.0 && alpha_ <= 1.0)) {
    throw PreconditionError("cost model: alpha must lie in [0, 1]");
  }
}

CostModel CostModel::standard(std::size_t num_classes, double alpha) {
  std::vector<std::vector<double>> m(num_classes, std::vector<double>(num_classes, 1.0));
  for (std::size_t i = 0; i < num_classes; ++i) m[i][i] = 0.0;
  return CostModel(std::move(m), DelayCurve::Linear, alpha);
}

CostModel CostModel::anomaly(std::size_t num_classes, ClassLabel anomaly_class, double alpha) {
  if (anomaly_class >= num_classes) throw PreconditionError("cost model: anomaly class out of range");
  std::vector<std::vector<double>> m(num_classes, std::vector<double>(num_classes, 1.0));
  for (std::size_t predicted = 0; predicted < num_classes; ++predicted) {
    m[predicted][predicted] = 0.0;
    if (predicted != anomaly_class) m[predicted][anomaly_class] = 100.0;
  }
  return CostModel(std::move(m), DelayCurve::Exponential, alpha);
}

CostModel CostModel::with_alpha(double alpha) const { return CostModel(matrix_, delay_, alpha); }

double CostModel::delay_cost(Timestamp t, Timestamp series_length) const {
  if (series_length < 1 || t < 1 || t > series_length) {
    throw PreconditionError("delay_cost: t=" + std::to_string(t) + " outside [1, " +
                            std::to_string(series_length) + "]");
  }
  return delay_curve(delay_, static_cast<double>(t) / static_cast<double>(series_length));
}

double CostModel::misclassification_cost(ClassLabel predicted, ClassLabel truth) const {
  if (predicted >= matrix_.size() || truth >= matrix_.size()) {
    throw PreconditionError("misclassification_cost: class index out of range");
  }
  return matrix_[predicted][truth];
}

double CostModel::loss(ClassLabel predicted, ClassLabel truth, Timestamp t,
                       Timestamp series_length) const {
  return misclassification_cost(predicted, truth) + delay_cost(t, series_length);
}

double CostModel::weighted_loss(ClassLabel predicted, ClassLabel truth, Timestamp t,
                                Timestamp series_length) const {
  return alpha_ * misclassification_cost(predicted, truth) +
         (1.0 - alpha_) * delay_cost(t, series_length);
}

}  // namespace ects
