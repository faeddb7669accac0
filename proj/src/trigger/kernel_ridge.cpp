#include "ects/trigger/kernel_ridge.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ects/error.hpp"
#include "ects/simd/kernels.hpp"

namespace ects {

double rbf_kernel(std::span<const double> a, std::span<const double> b, double bandwidth) {
  return std::exp(-simd::squared_distance(a, b) / (2.0 * bandwidth * bandwidth));
}

double median_pairwise_distance(const std::vector<std::vector<double>>& points) {
  if (points.size() < 2) return 1.0;
  std::vector<double> d;
  d.reserve(points.size() * (points.size() - 1) / 2);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      d.push_back(std::sqrt(simd::squared_distance(points[i], points[j])));
    }
  }
  const auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
  std::nth_element(d.begin(), mid, d.end());
  double median = *mid;
  if (d.size() % 2 == 0) median = (median + *std::max_element(d.begin(), mid)) / 2.0;
  return median > 0.0 ? median : 1.0;
}

KernelRidgeRegressor::KernelRidgeRegressor(std::vector<std::vector<double>> support,
                                           std::vector<double> dual_weights, double bandwidth,
                                           double lambda)
    : support_(std::move(support)), dual_weights_(std::move(dual_weights)), bandwidth_(bandwidth),
      lambda_(lambda) {
  if (support_.size() != dual_weights_.size()) {
    throw PreconditionError("kernel ridge: one weight per support point required");
  }
  if (!(bandwidth_ > 0.0)) throw PreconditionError("kernel ridge: bandwidth must be positive");
}

double KernelRidgeRegressor::predict(std::span<const double> x) const {
  double out = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    out += dual_weights_[i] * rbf_kernel(support_[i], x, bandwidth_);
  }
  return out;
}

KernelRidgeRegressor fit_kernel_ridge(std::vector<std::vector<double>> inputs,
                                      std::span<const double> targets, double lambda,
                                      double bandwidth) {
  const std::size_t n = inputs.size();
  if (n == 0 || targets.size() != n) throw PreconditionError("kernel ridge: need one target per input");
  if (!(lambda > 0.0)) throw PreconditionError("kernel ridge: lambda must be positive");
  const double sigma = bandwidth > 0.0 ? bandwidth : median_pairwise_distance(inputs);

  Eigen::MatrixXd gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    gram(i, i) = 1.0 + lambda;
    for (std::size_t j = 0; j < i; ++j) {
      const double k = rbf_kernel(inputs[i], inputs[j], sigma);
      gram(i, j) = k;
      gram(j, i) = k;
    }
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw NumericError("kernel ridge: regularized Gram matrix is not positive definite");
  }
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(targets.data(), static_cast<Eigen::Index>(n));
  const Eigen::VectorXd w = llt.solve(rhs);
  if (!w.allFinite()) throw NumericError("kernel ridge: solution is not finite");
  return KernelRidgeRegressor(std::move(inputs), std::vector<double>(w.data(), w.data() + n), sigma, lambda);
}

}  // namespace ects
