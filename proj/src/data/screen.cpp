#include "ects/data/screen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ects/classify/collection.hpp"
#include "ects/data/transform.hpp"
#include "ects/error.hpp"

namespace ects {

double roc_auc(std::span<const double> scores, const std::vector<bool>& positive) {
  if (scores.size() != positive.size()) throw PreconditionError("roc_auc: size mismatch");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // average ranks (1-based) over tie groups
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }
  double pos = 0.0;
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (positive[i]) {
      pos += 1.0;
      rank_sum += rank[i];
    }
  }
  const double neg = static_cast<double>(n) - pos;
  if (pos == 0.0 || neg == 0.0) throw PreconditionError("roc_auc: need positives and negatives");
  return (rank_sum - pos * (pos + 1.0) / 2.0) / (pos * neg);
}

double macro_ovr_auc(const std::vector<std::vector<double>>& probs,
                     std::span<const ClassLabel> labels, std::size_t num_classes) {
  if (probs.size() != labels.size()) throw PreconditionError("macro_ovr_auc: size mismatch");
  double total = 0.0;
  std::size_t used = 0;
  std::vector<double> scores(probs.size());
  std::vector<bool> positive(probs.size());
  for (std::size_t c = 0; c < num_classes; ++c) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      scores[i] = probs[i][c];
      positive[i] = labels[i] == c;
      pos += positive[i] ? 1 : 0;
    }
    if (pos == 0 || pos == probs.size()) continue;
    total += roc_auc(scores, positive);
    ++used;
  }
  if (used == 0) throw PreconditionError("macro_ovr_auc: no class has both positives and negatives");
  return total / static_cast<double>(used);
}

ScreenResult information_gain_screen(const Dataset& dataset, const LogisticHyper& hyper,
                                     std::uint64_t seed, const ScreenWindows& windows) {
  validate_dataset(dataset);
  const Timestamp T = dataset.length;
  auto to_time = [T](int percent) {
    return std::clamp<Timestamp>(static_cast<Timestamp>(std::llround(percent * T / 100.0)), 1, T);
  };
  std::set<Timestamp> times{T};
  for (const auto* w : {&windows.early, &windows.middle, &windows.late}) {
    for (int p : *w) times.insert(to_time(p));
  }
  const SampledTimeline timeline(std::vector<Timestamp>(times.begin(), times.end()), T);

  const auto parts = stratified_split(dataset.train, 0.3, seed);
  const auto collection = fit_collection(parts.second, timeline, hyper, parts.first, dataset.num_classes);

  std::vector<ClassLabel> labels;
  for (const auto& s : dataset.test) labels.push_back(s.label);
  auto auc_at = [&](Timestamp t) {
    std::vector<std::vector<double>> probs;
    probs.reserve(dataset.test.size());
    for (const auto& s : dataset.test) probs.push_back(collection.predict_proba(s.values, t));
    return macro_ovr_auc(probs, labels, dataset.num_classes);
  };
  auto window_mean = [&](const std::vector<int>& window) {
    double total = 0.0;
    for (int p : window) total += auc_at(to_time(p));
    return total / static_cast<double>(window.size());
  };

  ScreenResult r;
  r.auc_early = window_mean(windows.early);
  r.auc_middle = window_mean(windows.middle);
  r.auc_late = window_mean(windows.late);
  r.auc_gain_half = r.auc_middle - r.auc_early;
  r.auc_gain_full = r.auc_late - r.auc_early;
  r.accepted = r.auc_gain_half > 0.0 && r.auc_gain_full > 0.0;
  return r;
}

}  // namespace ects
