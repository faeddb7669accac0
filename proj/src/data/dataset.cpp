#include "ects/data/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

#include "json.hpp"

#include "ects/error.hpp"
#include "ects/util/format.hpp"

namespace ects {
namespace {

struct RawSeries {
  std::int64_t label;
  std::vector<double> values;
};

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

std::vector<RawSeries> read_raw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open series file '" + path.string() + "'");
  std::vector<RawSeries> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t expected_length = 0;
  std::vector<std::size_t> blank_lines;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      blank_lines.push_back(line_no);
      continue;
    }
    if (!blank_lines.empty()) throw DataError(where(path, blank_lines.front()) + "empty line");

    RawSeries row{};
    std::string_view rest(line);
    std::size_t field = 0;
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view token = rest.substr(0, comma);
      if (token.empty()) {
        throw DataError(where(path, line_no) + "empty field " + std::to_string(field + 1));
      }
      const char* first = token.data();
      const char* last = token.data() + token.size();
      if (field == 0) {
        const auto [ptr, ec] = std::from_chars(first, last, row.label);
        if (ec != std::errc{} || ptr != last) {
          throw DataError(where(path, line_no) + "label '" + std::string(token) +
                          "' is not an integer");
        }
      } else {
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
          throw DataError(where(path, line_no) + "value '" + std::string(token) +
                          "' is not a finite number");
        }
        row.values.push_back(value);
      }
      ++field;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (row.values.size() < 2) {
      throw DataError(where(path, line_no) + "a series needs at least two values");
    }
    if (rows.empty()) {
      expected_length = row.values.size();
    } else if (row.values.size() != expected_length) {
      throw DataError(where(path, line_no) + "expected " + std::to_string(expected_length) +
                      " values, found " + std::to_string(row.values.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("'" + path.string() + "': no series");
  return rows;
}

std::string series_id(std::string_view part, std::size_t index) {
  std::string digits = std::to_string(index);
  if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
  return std::string(part) + "-" + digits;
}

}  // namespace

void validate_dataset(const Dataset& dataset) {
  if (dataset.num_classes < 2) throw DataError("dataset '" + dataset.name + "': fewer than 2 classes");
  if (dataset.train.empty()) throw DataError("dataset '" + dataset.name + "': empty train set");
  std::vector<bool> seen(dataset.num_classes, false);
  for (const auto* part : {&dataset.train, &dataset.test}) {
    for (const auto& s : *part) {
      validate_series(s, dataset.num_classes);
      if (static_cast<Timestamp>(s.values.size()) != dataset.length) {
        throw DataError("dataset '" + dataset.name + "': series '" + s.id +
                        "' has a different length");
      }
    }
  }
  for (const auto& s : dataset.train) seen[s.label] = true;
  for (std::size_t c = 0; c < seen.size(); ++c) {
    if (!seen[c]) {
      throw DataError("dataset '" + dataset.name + "': class " + std::to_string(c) +
                      " absent from train");
    }
  }
}

Dataset load_dataset(const std::filesystem::path& train_path,
                     const std::filesystem::path& test_path, std::string name) {
  auto train_rows = read_raw(train_path);
  auto test_rows = read_raw(test_path);
  if (train_rows.front().values.size() != test_rows.front().values.size()) {
    throw DataError("train and test series lengths differ");
  }

  std::map<std::int64_t, ClassLabel> index;
  for (const auto& r : train_rows) index.emplace(r.label, 0);
  Dataset ds;
  ds.name = name.empty() ? train_path.stem().string() : std::move(name);
  for (auto& [raw, idx] : index) {
    idx = ds.raw_labels.size();
    ds.raw_labels.push_back(raw);
  }
  ds.num_classes = ds.raw_labels.size();
  ds.length = static_cast<Timestamp>(train_rows.front().values.size());

  for (std::size_t i = 0; i < train_rows.size(); ++i) {
    ds.train.push_back({series_id("train", i), std::move(train_rows[i].values),
                        index.at(train_rows[i].label)});
  }
  for (std::size_t i = 0; i < test_rows.size(); ++i) {
    const auto it = index.find(test_rows[i].label);
    if (it == index.end()) {
      throw DataError(where(test_path, i + 1) + "label " + std::to_string(test_rows[i].label) +
                      " does not occur in the train file");
    }
    ds.test.push_back({series_id("test", i), std::move(test_rows[i].values), it->second});
  }
  validate_dataset(ds);
  return ds;
}

void write_series_file(const std::filesystem::path& path, const std::vector<LabeledSeries>& series,
                       const std::vector<std::int64_t>& raw_labels) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  for (const auto& s : series) {
    if (s.label >= raw_labels.size()) throw DataError("series '" + s.id + "': label has no raw value");
    out << raw_labels[s.label];
    for (double v : s.values) out << ',' << format_double(v);
    out << '\n';
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest '" + path.string() + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("manifest '" + path.string() + "': " + e.what());
  }
  DatasetManifest m;
  try {
    m.name = doc.at("name").get<std::string>();
    m.train_file = doc.at("train_file").get<std::string>();
    m.test_file = doc.at("test_file").get<std::string>();
    m.num_classes = doc.at("num_classes").get<std::size_t>();
    m.length = doc.at("length").get<Timestamp>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError("manifest '" + path.string() + "': " + e.what());
  }
  const auto base = path.parent_path();
  if (m.train_file.is_relative()) m.train_file = base / m.train_file;
  if (m.test_file.is_relative()) m.test_file = base / m.test_file;
  return m;
}

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  nlohmann::ordered_json doc;
  doc["name"] = manifest.name;
  doc["train_file"] = manifest.train_file.generic_string();
  doc["test_file"] = manifest.test_file.generic_string();
  doc["num_classes"] = manifest.num_classes;
  doc["length"] = manifest.length;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

Dataset load_from_manifest(const std::filesystem::path& path) {
  const auto m = read_manifest(path);
  Dataset ds = load_dataset(m.train_file, m.test_file, m.name);
  if (ds.num_classes != m.num_classes) {
    throw DataError("manifest '" + path.string() + "' declares " + std::to_string(m.num_classes) +
                    " classes, files contain " + std::to_string(ds.num_classes));
  }
  if (ds.length != m.length) {
    throw DataError("manifest '" + path.string() + "' declares length " + std::to_string(m.length) +
                    ", files contain " + std::to_string(ds.length));
  }
  return ds;
}

}  // namespace ects
