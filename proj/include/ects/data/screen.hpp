#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ects/classify/logistic.hpp"
#include "ects/core/types.hpp"
#include "ects/data/dataset.hpp"

namespace ects {

// Area under the ROC curve by the rank-sum formula; tied scores count one
// half. Needs at least one positive and one negative.
double roc_auc(std::span<const double> scores, const std::vector<bool>& positive);

// Mean one-vs-rest AUC over the classes that have both positives and
// negatives. probs[i] is the distribution predicted for sample i.
double macro_ovr_auc(const std::vector<std::vector<double>>& probs,
                     std::span<const ClassLabel> labels, std::size_t num_classes);

struct ScreenWindows {
  std::vector<int> early{5, 10, 15, 20, 25};
  std::vector<int> middle{40, 45, 50, 55, 60};
  std::vector<int> late{75, 80, 85, 90, 95, 100};
};

struct ScreenResult {
  double auc_early = 0.0;
  double auc_middle = 0.0;
  double auc_late = 0.0;
  double auc_gain_half = 0.0;  // middle - early
  double auc_gain_full = 0.0;  // late - early
  bool accepted = false;       // both gains strictly positive
};

// Fits the prefix classifier collection at the window percentages (30% of
// train held out for calibration) and compares mean test AUC across windows.
// Keeps datasets whose class information grows over time.
ScreenResult information_gain_screen(const Dataset& dataset, const LogisticHyper& hyper,
                                     std::uint64_t seed = 0,
                                     const ScreenWindows& windows = ScreenWindows{});

}  // namespace ects
