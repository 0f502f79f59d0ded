#include "distlearn/core_types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace distlearn {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double WeightedDataset::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void WeightedDataset::push_back(const LabeledPoint& p, double w) {
  if (static_cast<int>(p.coords.size()) != dimension)
    throw std::invalid_argument("push_back: point dimension mismatch");
  if (p.label != 1 && p.label != -1)
    throw std::invalid_argument("push_back: label must be +1 or -1");
  if (!(w >= 0.0)) throw std::invalid_argument("push_back: negative weight");
  points.push_back(p);
  weights.push_back(w);
}

void WeightedDataset::validate() const {
  if (dimension <= 0) throw std::invalid_argument("dataset: dimension must be positive");
  if (points.size() != weights.size())
    throw std::invalid_argument("dataset: points/weights size mismatch");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (static_cast<int>(points[i].coords.size()) != dimension)
      throw std::invalid_argument("dataset: point " + std::to_string(i) +
                                  " has wrong dimension");
    if (points[i].label != 1 && points[i].label != -1)
      throw std::invalid_argument("dataset: point " + std::to_string(i) +
                                  " has label outside {+1,-1}");
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i]))
      throw std::invalid_argument("dataset: point " + std::to_string(i) +
                                  " has invalid weight");
  }
}

WeightedDataset make_dataset(std::vector<LabeledPoint> points, int dimension) {
  WeightedDataset ds;
  ds.dimension = dimension;
  ds.points = std::move(points);
  ds.weights.assign(ds.points.size(), 1.0);
  ds.validate();
  return ds;
}

int classify(const LinearClassifier& c, const std::vector<double>& coords) {
  const double v = dot(c.normal, coords) + c.offset;
  return v >= 0.0 ? 1 : -1;
}

int classify(const LinearClassifier& c, const LabeledPoint& p) {
  return classify(c, p.coords);
}

int ensemble_classify(const MajorityEnsemble& e, const std::vector<double>& coords) {
  if (e.members.empty()) throw std::invalid_argument("ensemble_classify: no members");
  int vote = 0;
  for (const auto& m : e.members) vote += classify(m, coords);
  return vote > 0 ? 1 : -1;  // exact tie votes -1
}

int ensemble_classify(const MajorityEnsemble& e, const LabeledPoint& p) {
  return ensemble_classify(e, p.coords);
}

double weighted_error(const LinearClassifier& c, const WeightedDataset& ds) {
  const double total = ds.total_weight();
  if (!(total > 0.0)) throw std::invalid_argument("weighted_error: total weight not positive");
  double wrong = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i)
    if (classify(c, ds.points[i]) != ds.points[i].label) wrong += ds.weights[i];
  return wrong / total;
}

double ensemble_accuracy(const MajorityEnsemble& e, const WeightedDataset& ds) {
  if (ds.size() == 0) throw std::invalid_argument("ensemble_accuracy: empty dataset");
  std::size_t right = 0;
  for (const auto& p : ds.points)
    if (ensemble_classify(e, p) == p.label) ++right;
  return static_cast<double>(right) / static_cast<double>(ds.size());
}

double renormalize_to_mean_one(WeightedDataset& ds, double threshold) {
  const double total = ds.total_weight();
  if (!(total > threshold) || ds.weights.empty()) return 1.0;
  const double scale = static_cast<double>(ds.weights.size()) / total;
  for (double& w : ds.weights) w *= scale;
  return scale;
}

}  // namespace distlearn
