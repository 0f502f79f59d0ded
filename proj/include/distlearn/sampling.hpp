#pragma once

#include <cstdint>
#include <vector>

#include "distlearn/core_types.hpp"

namespace distlearn {

// Inputs for the sample-size bound. nu is the complexity parameter of the
// hypothesis class (dimension-like), epsilon the target error fraction,
// failure_prob the allowed failure probability. scale is the leading constant.
// failure_prob defaults to 0.5 so the confidence factor is exactly 1.
struct SampleSizeParams {
  double epsilon = 0.05;
  double nu = 1.0;
  double scale = 1.0;       // C
  double failure_prob = 0.5;  // delta
};

// ceil(C * min{(nu/eps)*log2(nu/eps), nu/eps^2} * max(1, log2(1/delta))).
// Requires 0 < eps < 1, nu >= 1, C > 0, 0 < delta < 1.
std::int64_t sample_size(const SampleSizeParams& p);

// m indices drawn with replacement, P(i) proportional to ds.weights[i].
// Deterministic given seed. Total weight must be positive.
std::vector<std::size_t> weighted_sample(const WeightedDataset& ds, std::int64_t m,
                                         std::uint64_t seed);

// Splits s draws across parties by s independent categorical draws with
// probabilities proportional to sizes. Counts always sum to exactly s.
// At least one size must be positive; sizes must be nonnegative.
std::vector<std::int64_t> proportional_allocation(const std::vector<double>& sizes,
                                                  std::int64_t s, std::uint64_t seed);

}  // namespace distlearn
