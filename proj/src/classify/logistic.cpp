#include "ects/classify/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ects/error.hpp"
#include "ects/simd/kernels.hpp"

namespace ects {

SoftmaxModel::SoftmaxModel(std::size_t num_classes, std::size_t num_features)
    : num_features_(num_features),
      weights_(num_classes * num_features, 0.0),
      intercepts_(num_classes, 0.0) {}

SoftmaxModel::SoftmaxModel(std::size_t num_classes, std::size_t num_features,
                           std::vector<double> weights, std::vector<double> intercepts)
    : num_features_(num_features), weights_(std::move(weights)), intercepts_(std::move(intercepts)) {
  if (intercepts_.size() != num_classes || weights_.size() != num_classes * num_features) {
    throw PreconditionError("softmax model: parameter sizes do not match K x D");
  }
}

std::vector<double> SoftmaxModel::logits(std::span<const double> x) const {
  if (x.size() != num_features_) throw PreconditionError("softmax model: feature count mismatch");
  std::vector<double> z(intercepts_.begin(), intercepts_.end());
  for (std::size_t k = 0; k < z.size(); ++k) {
    z[k] += simd::dot(std::span<const double>(weights_).subspan(k * num_features_, num_features_), x);
  }
  return z;
}

std::vector<double> SoftmaxModel::proba(std::span<const double> x) const { return softmax(logits(x)); }

double SoftmaxModel::squared_weight_norm() const { return simd::dot(weights_, weights_); }

std::vector<double> softmax(std::span<const double> logits) {
  const double peak = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double total = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    p[k] = std::exp(logits[k] - peak);
    total += p[k];
  }
  for (double& v : p) v /= total;
  return p;
}

LossGradient softmax_loss_gradient(const SoftmaxModel& model, const DesignMatrix& x,
                                   std::span<const ClassLabel> labels, double l2) {
  const std::size_t n = x.rows;
  const std::size_t num_classes = model.num_classes();
  const std::size_t d = model.num_features();
  if (x.cols() != d || labels.size() != n || n == 0) {
    throw PreconditionError("softmax_loss_gradient: shape mismatch");
  }

  // logits[k][i], built column by column
  std::vector<std::vector<double>> logits(num_classes, std::vector<double>(n));
  for (std::size_t k = 0; k < num_classes; ++k) {
    std::fill(logits[k].begin(), logits[k].end(), model.intercepts()[k]);
    for (std::size_t j = 0; j < d; ++j) simd::axpy(model.weight(k, j), x.columns[j], logits[k]);
  }

  // residual[k][i] = p_k(i) - [y_i == k]
  double data_loss = 0.0;
  std::vector<double> z(num_classes);
  for (std::size_t i = 0; i < n; ++i) {
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < num_classes; ++k) {
      z[k] = logits[k][i];
      peak = std::max(peak, z[k]);
    }
    double total = 0.0;
    for (std::size_t k = 0; k < num_classes; ++k) total += std::exp(z[k] - peak);
    const double log_norm = peak + std::log(total);
    data_loss += log_norm - z[labels[i]];
    for (std::size_t k = 0; k < num_classes; ++k) {
      logits[k][i] = std::exp(z[k] - log_norm) - (labels[i] == k ? 1.0 : 0.0);
    }
  }
  const auto& residual = logits;

  LossGradient out;
  const double inv_n = 1.0 / static_cast<double>(n);
  out.loss = data_loss * inv_n + 0.5 * l2 * model.squared_weight_norm();
  out.weight_grad.resize(num_classes * d);
  out.intercept_grad.resize(num_classes);
  for (std::size_t k = 0; k < num_classes; ++k) {
    for (std::size_t j = 0; j < d; ++j) {
      out.weight_grad[k * d + j] = simd::dot(residual[k], x.columns[j]) * inv_n + l2 * model.weight(k, j);
    }
    out.intercept_grad[k] = simd::sum(residual[k]) * inv_n;
  }
  return out;
}

SoftmaxModel fit_softmax(const DesignMatrix& x, std::span<const ClassLabel> labels,
                         std::size_t num_classes, const LogisticHyper& hyper) {
  if (hyper.iters < 0 || !(hyper.lr > 0.0) || !(hyper.l2 >= 0.0)) {
    throw PreconditionError("fit_softmax: need iters >= 0, lr > 0, l2 >= 0");
  }
  SoftmaxModel model(num_classes, x.cols());
  for (int it = 0; it < hyper.iters; ++it) {
    const LossGradient g = softmax_loss_gradient(model, x, labels, hyper.l2);
    if (!std::isfinite(g.loss)) throw NumericError("fit_softmax: loss diverged");
    simd::axpy(-hyper.lr, g.weight_grad, model.weights());
    simd::axpy(-hyper.lr, g.intercept_grad, model.intercepts());
  }
  return model;
}

}  // namespace ects
