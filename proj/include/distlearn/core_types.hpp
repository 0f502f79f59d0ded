#pragma once

#include <cstddef>
#include <vector>

namespace distlearn {

// A point in R^d with a binary label (+1 or -1).
struct LabeledPoint {
  std::vector<double> coords;
  int label = 1;
};

// Points with per-point nonnegative multiplicative weights. Weights start at 1
// and only ever grow under the reweighting protocols; callers renormalize via
// renormalize_to_mean_one() before the total can overflow.
struct WeightedDataset {
  std::vector<LabeledPoint> points;
  std::vector<double> weights;
  int dimension = 0;

  std::size_t size() const { return points.size(); }
  double total_weight() const;
  void push_back(const LabeledPoint& p, double w = 1.0);
  void validate() const;  // throws std::invalid_argument on shape violations
};

WeightedDataset make_dataset(std::vector<LabeledPoint> points, int dimension);

// Halfspace classifier: sign(<normal, x> + offset). normal must be nonzero.
struct LinearClassifier {
  std::vector<double> normal;
  double offset = 0.0;
};

struct MajorityEnsemble {
  std::vector<LinearClassifier> members;
};

// Boundary points (<normal,x> + offset == 0) classify as +1.
int classify(const LinearClassifier& c, const std::vector<double>& coords);
int classify(const LinearClassifier& c, const LabeledPoint& p);

// Unweighted majority vote over members; an exact tie votes -1.
int ensemble_classify(const MajorityEnsemble& e, const std::vector<double>& coords);
int ensemble_classify(const MajorityEnsemble& e, const LabeledPoint& p);

// Weight fraction of misclassified points: sum of weights where
// classify(c, p) != p.label, divided by total weight. Total weight must be
// positive. Invariant under positive rescaling of (normal, offset) and of the
// weights jointly.
double weighted_error(const LinearClassifier& c, const WeightedDataset& ds);

// Unweighted fraction of correctly classified points.
double ensemble_accuracy(const MajorityEnsemble& e, const WeightedDataset& ds);

// Rescales weights to mean 1 when the total exceeds the threshold, preserving
// all weight ratios. Returns the applied scale factor (1.0 when untouched).
double renormalize_to_mean_one(WeightedDataset& ds, double threshold = 1e300);

double dot(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace distlearn
