#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ects/core/types.hpp"

namespace ects {

// Train/test series sharing one length and one label space. Class indices
// are 0..K-1; raw_labels[k] is the label the files used for class k.
struct Dataset {
  std::string name;
  std::vector<LabeledSeries> train;
  std::vector<LabeledSeries> test;
  std::size_t num_classes = 0;
  Timestamp length = 0;
  std::vector<std::int64_t> raw_labels;
};

// Throws DataError if the dataset breaks its invariants: K >= 2, equal
// lengths, labels in range, every class present in train.
void validate_dataset(const Dataset& dataset);

// Reads headerless "label,v1,...,vT" files. Raw labels are remapped to
// 0..K-1 in ascending numeric order of the train labels; a test label that
// never occurs in train is an error.
Dataset load_dataset(const std::filesystem::path& train_path,
                     const std::filesystem::path& test_path, std::string name = {});

// Writes series with their raw labels, floats as shortest round-trip decimals.
void write_series_file(const std::filesystem::path& path, const std::vector<LabeledSeries>& series,
                       const std::vector<std::int64_t>& raw_labels);

struct DatasetManifest {
  std::string name;
  std::filesystem::path train_file;
  std::filesystem::path test_file;
  std::size_t num_classes = 0;
  Timestamp length = 0;
};

// Relative file paths are resolved against the manifest's directory.
DatasetManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);

// Loads the files a manifest names and checks the declared K and T.
Dataset load_from_manifest(const std::filesystem::path& path);

}  // namespace ects
