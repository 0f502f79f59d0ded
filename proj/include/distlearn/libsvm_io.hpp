#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "distlearn/core_types.hpp"

namespace distlearn {

// Sparse "label index:value" rows with 1-based strictly increasing indices.
// Labels parse as +1/-1 (0 reads as -1); exact zeros are omitted on write.
// dimension 0 infers the dimension from the largest index seen.
WeightedDataset read_libsvm(const std::string& path, int dimension = 0);
void write_libsvm(const std::string& path, const WeightedDataset& ds);

struct DatasetManifest {
  std::string name;
  int dimension = 0;
  std::uint64_t seed = 0;
  std::string partition;
  std::vector<std::string> files;  // one per party, relative to the manifest
  std::vector<std::int64_t> counts;
};

void write_manifest(const std::string& path, const DatasetManifest& m);
DatasetManifest read_manifest(const std::string& path);

// Loads every party file named by the manifest at the manifest's directory.
std::vector<WeightedDataset> load_manifest_parties(const std::string& manifest_path);

}  // namespace distlearn
