#pragma once

#include <cstddef>
#include <cstdint>

#include "ects/data/dataset.hpp"

namespace ects {

// Class c carries level +1 on [c*T/K, (c+1)*T/K) and 0 elsewhere, plus
// Gaussian noise. With three classes the discriminative signal of each class
// sits in its own third of the series.
struct SyntheticSpec {
  std::size_t classes = 3;
  Timestamp length = 15;
  std::size_t train_per_class = 100;
  std::size_t test_per_class = 100;
  double noise_std = 0.3;
  std::uint64_t seed = 0;
};

Dataset generate_synthetic(const SyntheticSpec& spec);

}  // namespace ects
