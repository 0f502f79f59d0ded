#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "distlearn/core_types.hpp"

namespace distlearn {

struct MixtureComponent {
  std::vector<double> mean;
  double spread = 1.0;  // isotropic standard deviation
  std::int64_t count = 0;
  int label = 1;  // used only when relabel_by_truth is off
};

enum class PartitionMode { random_split, by_cluster, by_halfspace };

struct SyntheticSpec {
  int dimension = 0;
  int parties = 1;
  double margin = 0.0;  // geometric gap enforced around the ground truth
  std::vector<MixtureComponent> components;
  PartitionMode partition = PartitionMode::random_split;
  std::uint64_t seed = 0;
  // Separator (normal, offset) the margin and truth labels refer to. Drawn
  // at random when needed but absent.
  std::optional<std::pair<std::vector<double>, double>> ground_truth;
  bool relabel_by_truth = false;
  // Sort direction for by_halfspace; drawn orthogonal to the ground truth
  // when absent.
  std::optional<std::vector<double>> partition_direction;
};

// Draws the mixture, applies margin rejection and labeling, and deals the
// points to the parties. A SyntheticSpec and its seed fully determine the output.
// Throws when margin rejection discards more than 100 times the requested
// number of points.
std::vector<WeightedDataset> generate_synthetic(const SyntheticSpec& spec);

const std::vector<std::string>& preset_names();
SyntheticSpec preset(const std::string& name);
const char* partition_mode_name(PartitionMode mode);

}  // namespace distlearn
