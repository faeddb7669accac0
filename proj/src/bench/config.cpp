#include "ects/bench/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "ects/error.hpp"

namespace ects {
namespace {

using Json = nlohmann::json;

void reject_unknown_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
T get(const Json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(where + ": key '" + key + "' is missing or has the wrong type");
  }
}

std::string valid_method_list() {
  std::string out;
  for (Method m : all_methods()) {
    if (!out.empty()) out += ", ";
    out += method_name(m);
  }
  return out;
}

SyntheticSpec parse_synthetic(const Json& j) {
  reject_unknown_keys(j, {"classes", "length", "per_class", "train_per_class", "test_per_class", "noise_std", "seed"},
                      "synthetic dataset");
  SyntheticSpec s;
  if (j.contains("classes")) s.classes = get<std::size_t>(j, "classes", "synthetic dataset");
  if (j.contains("length")) s.length = get<Timestamp>(j, "length", "synthetic dataset");
  if (j.contains("per_class")) {
    s.train_per_class = s.test_per_class = get<std::size_t>(j, "per_class", "synthetic dataset");
  }
  if (j.contains("train_per_class")) s.train_per_class = get<std::size_t>(j, "train_per_class", "synthetic dataset");
  if (j.contains("test_per_class")) s.test_per_class = get<std::size_t>(j, "test_per_class", "synthetic dataset");
  if (j.contains("noise_std")) s.noise_std = get<double>(j, "noise_std", "synthetic dataset");
  if (j.contains("seed")) s.seed = get<std::uint64_t>(j, "seed", "synthetic dataset");
  if (s.classes < 2 || s.length < 2 || s.train_per_class < 1 || s.test_per_class < 1 || !(s.noise_std >= 0.0)) {
    throw ConfigError("synthetic dataset: need classes >= 2, length >= 2, per_class >= 1, noise_std >= 0");
  }
  return s;
}

}  // namespace

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

BenchConfig parse_config(const Json& doc, const std::filesystem::path& base_dir) {
  reject_unknown_keys(doc,
                      {"datasets", "methods", "cost_setting", "alpha_grid", "classifier", "trigger", "timeline_points",
                       "anomaly_class", "seed", "output_dir", "emit_svg", "bootstrap"},
                      "config");
  BenchConfig c;

  if (!doc.contains("datasets") || !doc.at("datasets").is_array() || doc.at("datasets").empty()) {
    throw ConfigError("config: 'datasets' must be a non-empty array");
  }
  for (const auto& entry : doc.at("datasets")) {
    DatasetSource src;
    if (entry.is_string()) {
      std::filesystem::path p = entry.get<std::string>();
      src.manifest = p.is_relative() ? base_dir / p : p;
    } else if (entry.is_object()) {
      reject_unknown_keys(entry, {"manifest", "synthetic", "name"}, "dataset entry");
      if (entry.contains("name")) src.name = get<std::string>(entry, "name", "dataset entry");
      if (entry.contains("manifest") == entry.contains("synthetic")) {
        throw ConfigError("dataset entry: give exactly one of 'manifest' or 'synthetic'");
      }
      if (entry.contains("manifest")) {
        std::filesystem::path p = get<std::string>(entry, "manifest", "dataset entry");
        src.manifest = p.is_relative() ? base_dir / p : p;
      } else {
        src.synthetic = parse_synthetic(entry.at("synthetic"));
      }
    } else {
      throw ConfigError("config: each dataset is a manifest path or an object");
    }
    c.datasets.push_back(std::move(src));
  }

  if (!doc.contains("methods") || !doc.at("methods").is_array() || doc.at("methods").empty()) {
    throw ConfigError("config: 'methods' must be a non-empty array");
  }
  for (const auto& m : doc.at("methods")) {
    if (!m.is_string()) throw ConfigError("config: method names must be strings");
    const auto name = m.get<std::string>();
    const auto method = parse_method(name);
    if (!method) throw ConfigError("config: unknown method '" + name + "'; valid names: " + valid_method_list());
    if (std::find(c.methods.begin(), c.methods.end(), *method) != c.methods.end()) {
      throw ConfigError("config: method '" + name + "' listed twice");
    }
    c.methods.push_back(*method);
  }

  if (doc.contains("cost_setting")) {
    const auto s = get<std::string>(doc, "cost_setting", "config");
    if (s == "standard") {
      c.cost_setting = CostSetting::Standard;
    } else if (s == "anomaly") {
      c.cost_setting = CostSetting::Anomaly;
    } else {
      throw ConfigError("config: cost_setting must be 'standard' or 'anomaly'");
    }
  }

  c.alpha_grid = doc.contains("alpha_grid") ? get<std::vector<double>>(doc, "alpha_grid", "config") : default_alpha_grid();
  if (c.alpha_grid.empty()) throw ConfigError("config: alpha_grid is empty");
  for (double a : c.alpha_grid) {
    if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("config: alpha " + std::to_string(a) + " outside [0, 1]");
  }
  std::sort(c.alpha_grid.begin(), c.alpha_grid.end());
  if (std::adjacent_find(c.alpha_grid.begin(), c.alpha_grid.end()) != c.alpha_grid.end()) {
    throw ConfigError("config: alpha_grid has duplicates");
  }

  if (doc.contains("classifier")) {
    const auto& j = doc.at("classifier");
    reject_unknown_keys(j, {"l2", "iters", "lr"}, "classifier");
    if (j.contains("l2")) c.classifier.l2 = get<double>(j, "l2", "classifier");
    if (j.contains("iters")) c.classifier.iters = get<int>(j, "iters", "classifier");
    if (j.contains("lr")) c.classifier.lr = get<double>(j, "lr", "classifier");
    if (!(c.classifier.l2 >= 0.0) || c.classifier.iters < 0 || !(c.classifier.lr > 0.0)) {
      throw ConfigError("classifier: need l2 >= 0, iters >= 0, lr > 0");
    }
  }

  if (doc.contains("trigger")) {
    const auto& j = doc.at("trigger");
    reject_unknown_keys(j, {"economy_k_grid", "economy_pseudo_count", "ridge_lambda", "rbf_bandwidth"}, "trigger");
    if (j.contains("economy_k_grid")) {
      c.trigger.economy_k_grid = get<std::vector<std::size_t>>(j, "economy_k_grid", "trigger");
      if (c.trigger.economy_k_grid.empty()) throw ConfigError("trigger: economy_k_grid is empty");
      for (auto k : c.trigger.economy_k_grid) {
        if (k < 1 || k > 20) throw ConfigError("trigger: economy k values must lie in [1, 20]");
      }
    }
    if (j.contains("economy_pseudo_count")) c.trigger.economy_pseudo_count = get<double>(j, "economy_pseudo_count", "trigger");
    if (j.contains("ridge_lambda")) c.trigger.ridge_lambda = get<double>(j, "ridge_lambda", "trigger");
    if (j.contains("rbf_bandwidth")) c.trigger.rbf_bandwidth = get<double>(j, "rbf_bandwidth", "trigger");
    if (!(c.trigger.economy_pseudo_count >= 0.0) || !(c.trigger.ridge_lambda > 0.0)) {
      throw ConfigError("trigger: need economy_pseudo_count >= 0 and ridge_lambda > 0");
    }
  }

  if (doc.contains("timeline_points")) {
    c.timeline_points = get<std::size_t>(doc, "timeline_points", "config");
    if (c.timeline_points < 1) throw ConfigError("config: timeline_points must be at least 1");
  }
  if (doc.contains("anomaly_class")) c.anomaly_class = get<std::size_t>(doc, "anomaly_class", "config");
  if (doc.contains("seed")) c.seed = get<std::uint64_t>(doc, "seed", "config");
  if (doc.contains("output_dir")) {
    std::filesystem::path p = get<std::string>(doc, "output_dir", "config");
    c.output_dir = p.is_relative() ? base_dir / p : p;
  } else {
    c.output_dir = base_dir / "results";
  }
  if (doc.contains("emit_svg")) c.emit_svg = get<bool>(doc, "emit_svg", "config");
  if (doc.contains("bootstrap")) {
    const auto& j = doc.at("bootstrap");
    reject_unknown_keys(j, {"level", "resamples"}, "bootstrap");
    if (j.contains("level")) c.bootstrap_level = get<double>(j, "level", "bootstrap");
    if (j.contains("resamples")) c.bootstrap_resamples = get<std::size_t>(j, "resamples", "bootstrap");
    if (!(c.bootstrap_level > 0.0 && c.bootstrap_level < 1.0) || c.bootstrap_resamples < 1) {
      throw ConfigError("bootstrap: need level in (0, 1) and resamples >= 1");
    }
  }
  return c;
}

BenchConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  Json doc;
  try {
    in >> doc;
  } catch (const Json::exception& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc, path.parent_path());
}

}  // namespace ects
