#pragma once

#include <span>
#include <vector>

namespace ects {

// p(positive | score) = 1 / (1 + exp(a * score + b)).
struct PlattSigmoid {
  double a = 0.0;
  double b = 0.0;

  double operator()(double score) const;
};

// Log-loss fit with Platt's smoothed targets, by Newton's method with
// backtracking (Lin, Lin & Weng, 2007).
PlattSigmoid fit_platt(std::span<const double> scores, const std::vector<bool>& positive);

// One-vs-rest sigmoids, one per class, then renormalization.
class CalibrationMap {
 public:
  CalibrationMap() = default;
  explicit CalibrationMap(std::vector<PlattSigmoid> per_class) : per_class_(std::move(per_class)) {}

  const std::vector<PlattSigmoid>& sigmoids() const { return per_class_; }

  // `scores[c]` is the class-c score the sigmoids were fitted on.
  std::vector<double> apply(std::span<const double> scores) const;

 private:
  std::vector<PlattSigmoid> per_class_;
};

}  // namespace ects
