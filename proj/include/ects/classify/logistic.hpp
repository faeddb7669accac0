#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ects/core/types.hpp"

namespace ects {

struct LogisticHyper {
  double l2 = 1e-3;
  int iters = 500;
  double lr = 0.1;
};

// Column-major sample matrix: columns[j][i] is feature j of sample i. The
// layout makes every inner loop of the fit a length-n vector kernel.
struct DesignMatrix {
  std::size_t rows = 0;
  std::vector<std::vector<double>> columns;

  std::size_t cols() const { return columns.size(); }
};

// Multinomial logistic model: logits = W x + b, W is K x D row-major.
class SoftmaxModel {
 public:
  SoftmaxModel() = default;
  SoftmaxModel(std::size_t num_classes, std::size_t num_features);
  SoftmaxModel(std::size_t num_classes, std::size_t num_features, std::vector<double> weights,
               std::vector<double> intercepts);

  std::size_t num_classes() const { return intercepts_.size(); }
  std::size_t num_features() const { return num_features_; }
  std::span<const double> weights() const { return weights_; }
  std::span<double> weights() { return weights_; }
  std::span<const double> intercepts() const { return intercepts_; }
  std::span<double> intercepts() { return intercepts_; }
  double weight(std::size_t k, std::size_t j) const { return weights_[k * num_features_ + j]; }

  std::vector<double> logits(std::span<const double> x) const;
  std::vector<double> proba(std::span<const double> x) const;

  double squared_weight_norm() const;

 private:
  std::size_t num_features_ = 0;
  std::vector<double> weights_;
  std::vector<double> intercepts_;
};

struct LossGradient {
  double loss = 0.0;
  std::vector<double> weight_grad;     // K x D
  std::vector<double> intercept_grad;  // K
};

// Mean cross-entropy plus (l2 / 2) * ||W||^2 (intercepts unpenalized), and its gradient.
LossGradient softmax_loss_gradient(const SoftmaxModel& model, const DesignMatrix& x,
                                   std::span<const ClassLabel> labels, double l2);

// Full-batch gradient descent from zero weights for exactly hyper.iters steps.
// Throws NumericError if the loss becomes non-finite.
SoftmaxModel fit_softmax(const DesignMatrix& x, std::span<const ClassLabel> labels,
                         std::size_t num_classes, const LogisticHyper& hyper);

// Softmax of a logit vector, computed stably.
std::vector<double> softmax(std::span<const double> logits);

}  // namespace ects
