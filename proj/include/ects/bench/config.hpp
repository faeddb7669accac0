#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ects/classify/logistic.hpp"
#include "ects/data/synthetic.hpp"
#include "ects/trigger/fit.hpp"

namespace ects {

enum class CostSetting { Standard, Anomaly };

// A dataset named by a manifest file or produced by the synthetic generator.
struct DatasetSource {
  std::optional<std::filesystem::path> manifest;
  std::optional<SyntheticSpec> synthetic;
  std::string name;  // empty: taken from the manifest / generator
};

struct BenchConfig {
  std::vector<DatasetSource> datasets;
  std::vector<Method> methods;
  CostSetting cost_setting = CostSetting::Standard;
  std::vector<double> alpha_grid;  // defaults to 0, 0.1, ..., 1
  LogisticHyper classifier;
  TriggerFitOptions trigger;
  std::size_t timeline_points = 20;
  ClassLabel anomaly_class = 1;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "results";
  bool emit_svg = false;
  double bootstrap_level = 0.9;
  std::size_t bootstrap_resamples = 10000;
};

std::vector<double> default_alpha_grid();

// Validates and fills defaults. Unknown keys, unknown method names and
// out-of-range values raise ConfigError. Relative paths resolve against
// `base_dir`.
BenchConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

// Reads a JSON config file; relative paths resolve against its directory.
BenchConfig parse_config_file(const std::filesystem::path& path);

}  // namespace ects
