#include "ects/data/synthetic.hpp"

#include <string>

#include "ects/core/rng.hpp"
#include "ects/error.hpp"

namespace ects {
namespace {

std::vector<LabeledSeries> draw(const SyntheticSpec& spec, std::size_t per_class,
                                const char* part, Rng rng) {
  std::vector<LabeledSeries> out;
  out.reserve(per_class * spec.classes);
  const auto T = static_cast<std::size_t>(spec.length);
  std::size_t n = 0;
  for (std::size_t i = 0; i < per_class; ++i) {
    for (std::size_t c = 0; c < spec.classes; ++c) {
      const std::size_t begin = c * T / spec.classes;
      const std::size_t end = (c + 1) * T / spec.classes;
      LabeledSeries s;
      std::string digits = std::to_string(n++);
      digits.insert(0, digits.size() < 6 ? 6 - digits.size() : 0, '0');
      s.id = std::string(part) + "-" + digits;
      s.label = c;
      s.values.resize(T);
      for (std::size_t t = 0; t < T; ++t) {
        const double level = (t >= begin && t < end) ? 1.0 : 0.0;
        s.values[t] = level + (spec.noise_std > 0.0 ? spec.noise_std * rng.normal() : 0.0);
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

Dataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.classes < 2) throw PreconditionError("generate_synthetic: need at least 2 classes");
  if (spec.length < 2) throw PreconditionError("generate_synthetic: length must be at least 2");
  if (spec.train_per_class < 1 || spec.test_per_class < 1) {
    throw PreconditionError("generate_synthetic: per_class must be at least 1");
  }
  if (!(spec.noise_std >= 0.0)) throw PreconditionError("generate_synthetic: noise_std must be >= 0");
  const Rng root(spec.seed);
  Dataset ds;
  ds.name = "synthetic-" + std::to_string(spec.seed);
  ds.num_classes = spec.classes;
  ds.length = spec.length;
  for (std::size_t c = 0; c < spec.classes; ++c) ds.raw_labels.push_back(static_cast<std::int64_t>(c));
  ds.train = draw(spec, spec.train_per_class, "train", root.split("train"));
  ds.test = draw(spec, spec.test_per_class, "test", root.split("test"));
  return ds;
}

}  // namespace ects
