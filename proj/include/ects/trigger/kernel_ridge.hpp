#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ects {

// RBF kernel k(x, x') = exp(-|x - x'|^2 / (2 * bandwidth^2)).
double rbf_kernel(std::span<const double> a, std::span<const double> b, double bandwidth);

// Median of the pairwise Euclidean distances; 1 when it is zero or there are
// fewer than two points.
double median_pairwise_distance(const std::vector<std::vector<double>>& points);

// Kernel ridge regression without intercept: f(x) = sum_i w_i k(x_i, x) where
// (K + lambda I) w = y is solved by Cholesky factorization.
class KernelRidgeRegressor {
 public:
  KernelRidgeRegressor() = default;
  KernelRidgeRegressor(std::vector<std::vector<double>> support, std::vector<double> dual_weights,
                       double bandwidth, double lambda);

  const std::vector<std::vector<double>>& support() const { return support_; }
  const std::vector<double>& dual_weights() const { return dual_weights_; }
  double bandwidth() const { return bandwidth_; }
  double lambda() const { return lambda_; }

  double predict(std::span<const double> x) const;

 private:
  std::vector<std::vector<double>> support_;
  std::vector<double> dual_weights_;
  double bandwidth_ = 1.0;
  double lambda_ = 1e-2;
};

// `bandwidth` <= 0 selects median_pairwise_distance(inputs). Throws
// NumericError if the regularized Gram matrix is not positive definite.
KernelRidgeRegressor fit_kernel_ridge(std::vector<std::vector<double>> inputs,
                                      std::span<const double> targets, double lambda,
                                      double bandwidth);

}  // namespace ects
