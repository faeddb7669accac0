#include "ects/classify/platt.hpp"

#include <cmath>

#include "ects/error.hpp"

namespace ects {

double PlattSigmoid::operator()(double score) const {
  const double f = a * score + b;
  // Evaluate in the branch that keeps exp() from overflowing.
  if (f >= 0.0) {
    const double e = std::exp(-f);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(f));
}

PlattSigmoid fit_platt(std::span<const double> scores, const std::vector<bool>& positive) {
  if (scores.size() != positive.size() || scores.empty()) {
    throw PreconditionError("fit_platt: need one label per score");
  }
  double prior1 = 0.0;
  for (bool p : positive) prior1 += p ? 1.0 : 0.0;
  const double prior0 = static_cast<double>(scores.size()) - prior1;

  const double hi_target = (prior1 + 1.0) / (prior1 + 2.0);
  const double lo_target = 1.0 / (prior0 + 2.0);
  constexpr int kMaxIter = 100;
  constexpr double kMinStep = 1e-10;
  constexpr double kSigma = 1e-12;
  constexpr double kEps = 1e-5;

  auto target = [&](std::size_t i) { return positive[i] ? hi_target : lo_target; };
  auto objective = [&](double a, double b) {
    double f = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      const double fapb = scores[i] * a + b;
      const double t = target(i);
      f += fapb >= 0.0 ? t * fapb + std::log1p(std::exp(-fapb))
                       : (t - 1.0) * fapb + std::log1p(std::exp(fapb));
    }
    return f;
  };

  double a = 0.0;
  double b = std::log((prior0 + 1.0) / (prior1 + 1.0));
  double fval = objective(a, b);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    double h11 = kSigma, h22 = kSigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      const double fapb = scores[i] * a + b;
      double p, q;
      if (fapb >= 0.0) {
        p = std::exp(-fapb) / (1.0 + std::exp(-fapb));
        q = 1.0 / (1.0 + std::exp(-fapb));
      } else {
        p = 1.0 / (1.0 + std::exp(fapb));
        q = std::exp(fapb) / (1.0 + std::exp(fapb));
      }
      const double d2 = p * q;
      h11 += scores[i] * scores[i] * d2;
      h22 += d2;
      h21 += scores[i] * d2;
      const double d1 = target(i) - p;
      g1 += scores[i] * d1;
      g2 += d1;
    }
    if (std::abs(g1) < kEps && std::abs(g2) < kEps) break;

    const double det = h11 * h22 - h21 * h21;
    const double da = -(h22 * g1 - h21 * g2) / det;
    const double db = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * da + g2 * db;
    double step = 1.0;
    while (step >= kMinStep) {
      const double na = a + step * da;
      const double nb = b + step * db;
      const double nf = objective(na, nb);
      if (nf < fval + 1e-4 * step * gd) {
        a = na;
        b = nb;
        fval = nf;
        break;
      }
      step /= 2.0;
    }
    if (step < kMinStep) break;
  }
  if (!std::isfinite(a) || !std::isfinite(b)) throw NumericError("fit_platt: non-finite parameters");
  return {a, b};
}

std::vector<double> CalibrationMap::apply(std::span<const double> scores) const {
  if (scores.size() != per_class_.size()) {
    throw PreconditionError("calibration: score count does not match class count");
  }
  std::vector<double> p(scores.size());
  double total = 0.0;
  for (std::size_t c = 0; c < scores.size(); ++c) {
    p[c] = per_class_[c](scores[c]);
    total += p[c];
  }
  if (!(total > 0.0)) {
    for (double& v : p) v = 1.0 / static_cast<double>(p.size());
    return p;
  }
  for (double& v : p) v /= total;
  return p;
}

}  // namespace ects
