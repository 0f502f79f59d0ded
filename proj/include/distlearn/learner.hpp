#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "distlearn/core_types.hpp"

namespace distlearn {

// hard_separating: maximize the margin delta subject to
//   y_i (<w, x_i> + b) >= delta, ||w||_inf <= 1, |b| <= 1 + max_i ||x_i||_1,
// solved exactly by the dense simplex inside an active-set loop (solve on a
// working subset, pull in the most violated margin constraints, repeat). On
// separable input the result has zero training error; weights are ignored.
// A provably inseparable input (subset margin optimum <= 1e-9) throws
// InseparableError.
//
// best_effort: mistake-driven perceptron over max_iterations epochs, each
// epoch visiting n indices drawn proportional to weight; returns the iterate
// with the lowest weighted error seen. Deterministic given cfg.seed.
enum class LearnerMode { hard_separating, best_effort };

struct LearnerConfig {
  LearnerMode mode = LearnerMode::hard_separating;
  int max_iterations = 64;         // best_effort epochs
  double margin_tolerance = 1e-6;  // default tol for support_set callers
  std::uint64_t seed = 0;
};

struct InseparableError : std::runtime_error {
  explicit InseparableError(const std::string& what) : std::runtime_error(what) {}
};

LinearClassifier train(const WeightedDataset& ds, const LearnerConfig& cfg);

// Indices whose normalized margin |<w,x>+b| / ||w||_2 lies within
// tol * max(1, min_margin) of the minimum margin over correctly classified
// points, plus every misclassified index. Ascending order.
std::vector<std::size_t> support_set(const WeightedDataset& ds,
                                     const LinearClassifier& c, double tol);

}  // namespace distlearn
