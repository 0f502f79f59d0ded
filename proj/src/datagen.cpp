#include "distlearn/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "distlearn/rng.hpp"

namespace distlearn {

namespace {

constexpr std::uint64_t kStreamPoints = 0x706f696eULL;
constexpr std::uint64_t kStreamTruth = 0x74727574ULL;
constexpr std::uint64_t kStreamPartition = 0x70617274ULL;

double l2_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void validate(const SyntheticSpec& spec) {
  if (spec.dimension < 1) throw std::invalid_argument("synthetic: dimension must be positive");
  if (spec.parties < 1) throw std::invalid_argument("synthetic: parties must be positive");
  if (spec.components.empty()) throw std::invalid_argument("synthetic: no components");
  if (!(spec.margin >= 0.0)) throw std::invalid_argument("synthetic: negative margin");
  for (const auto& c : spec.components) {
    if (static_cast<int>(c.mean.size()) != spec.dimension)
      throw std::invalid_argument("synthetic: component mean size mismatch");
    if (!(c.spread >= 0.0)) throw std::invalid_argument("synthetic: negative spread");
    if (c.count < 0) throw std::invalid_argument("synthetic: negative component count");
    if (c.label != 1 && c.label != -1)
      throw std::invalid_argument("synthetic: labels must be +1 or -1");
  }
  if (spec.ground_truth) {
    if (static_cast<int>(spec.ground_truth->first.size()) != spec.dimension)
      throw std::invalid_argument("synthetic: ground truth size mismatch");
    if (!(l2_norm(spec.ground_truth->first) > 0.0))
      throw std::invalid_argument("synthetic: ground truth normal is zero");
  }
  if (spec.partition_direction &&
      static_cast<int>(spec.partition_direction->size()) != spec.dimension)
    throw std::invalid_argument("synthetic: partition direction size mismatch");
  if (spec.margin > 0.0 && !spec.ground_truth && !spec.relabel_by_truth)
    throw std::invalid_argument("synthetic: margin rejection needs a ground truth");
}

std::vector<double> draw_unit_vector(Rng& rng, int d) {
  std::vector<double> v(d);
  for (;;) {
    for (double& x : v) x = rng.normal();
    const double n = l2_norm(v);
    if (n > 1e-12) {
      for (double& x : v) x /= n;
      return v;
    }
  }
}

std::vector<std::size_t> slab_counts(std::size_t n, int k) {
  std::vector<std::size_t> counts(k, n / static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < n % static_cast<std::size_t>(k); ++i) ++counts[i];
  return counts;
}

}  // namespace

std::vector<WeightedDataset> generate_synthetic(const SyntheticSpec& spec) {
  validate(spec);
  const int d = spec.dimension;
  const int k = spec.parties;

  std::vector<double> truth_normal;
  double truth_offset = 0.0;
  const bool need_truth = spec.ground_truth.has_value() || spec.relabel_by_truth ||
                          spec.margin > 0.0 ||
                          (spec.partition == PartitionMode::by_halfspace &&
                           !spec.partition_direction);
  if (need_truth) {
    if (spec.ground_truth) {
      truth_normal = spec.ground_truth->first;
      truth_offset = spec.ground_truth->second;
    } else {
      Rng truth_rng(mix_seed({spec.seed, kStreamTruth}));
      truth_normal = draw_unit_vector(truth_rng, d);
      truth_offset = 0.0;
    }
  }
  const double truth_norm = truth_normal.empty() ? 0.0 : l2_norm(truth_normal);

  std::int64_t requested = 0;
  for (const auto& c : spec.components) requested += c.count;
  const std::int64_t rejection_budget = 100 * std::max<std::int64_t>(1, requested);
  std::int64_t rejections = 0;

  Rng point_rng(mix_seed({spec.seed, kStreamPoints}));
  std::vector<LabeledPoint> points;
  std::vector<int> component_of;
  points.reserve(static_cast<std::size_t>(requested));

  for (std::size_t ci = 0; ci < spec.components.size(); ++ci) {
    const auto& c = spec.components[ci];
    for (std::int64_t i = 0; i < c.count; ++i) {
      LabeledPoint p;
      p.coords.resize(d);
      for (;;) {
        for (int j = 0; j < d; ++j)
          p.coords[j] = c.mean[j] + c.spread * point_rng.normal();
        if (spec.margin <= 0.0) break;
        const double side = dot(truth_normal, p.coords) + truth_offset;
        if (std::abs(side) / truth_norm >= spec.margin) break;
        if (++rejections > rejection_budget)
          throw std::runtime_error(
              "generate_synthetic: margin rejection budget exhausted; "
              "the mixture mass sits on the separator");
      }
      if (spec.relabel_by_truth) {
        p.label = dot(truth_normal, p.coords) + truth_offset >= 0.0 ? 1 : -1;
      } else {
        p.label = c.label;
      }
      points.push_back(std::move(p));
      component_of.push_back(static_cast<int>(ci));
    }
  }

  std::vector<WeightedDataset> parties(k);
  for (auto& ds : parties) ds.dimension = d;

  switch (spec.partition) {
    case PartitionMode::random_split: {
      Rng part_rng(mix_seed({spec.seed, kStreamPartition}));
      std::vector<std::size_t> order(points.size());
      std::iota(order.begin(), order.end(), 0);
      for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[part_rng.below(i)]);
      const auto counts = slab_counts(points.size(), k);
      std::size_t at = 0;
      for (int p = 0; p < k; ++p)
        for (std::size_t i = 0; i < counts[p]; ++i)
          parties[p].push_back(points[order[at++]], 1.0);
      break;
    }
    case PartitionMode::by_cluster: {
      for (std::size_t i = 0; i < points.size(); ++i)
        parties[component_of[i] % k].push_back(points[i], 1.0);
      break;
    }
    case PartitionMode::by_halfspace: {
      std::vector<double> u;
      if (spec.partition_direction) {
        u = *spec.partition_direction;
        if (!(l2_norm(u) > 0.0))
          throw std::invalid_argument("synthetic: partition direction is zero");
      } else {
        Rng part_rng(mix_seed({spec.seed, kStreamPartition}));
        for (;;) {
          u = draw_unit_vector(part_rng, d);
          const double along = dot(u, truth_normal) / (truth_norm * truth_norm);
          for (int j = 0; j < d; ++j) u[j] -= along * truth_normal[j];
          const double n = l2_norm(u);
          if (n > 1e-9) {
            for (double& x : u) x /= n;
            break;
          }
        }
      }
      std::vector<std::size_t> order(points.size());
      std::iota(order.begin(), order.end(), 0);
      std::vector<double> key(points.size());
      for (std::size_t i = 0; i < points.size(); ++i)
        key[i] = dot(u, points[i].coords);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (key[a] != key[b]) return key[a] < key[b];
        return a < b;
      });
      const auto counts = slab_counts(points.size(), k);
      std::size_t at = 0;
      for (int p = 0; p < k; ++p)
        for (std::size_t i = 0; i < counts[p]; ++i)
          parties[p].push_back(points[order[at++]], 1.0);
      break;
    }
  }
  return parties;
}

namespace {

std::vector<double> axis_vector(int d, int axis, double value) {
  std::vector<double> v(d, 0.0);
  v[axis] = value;
  return v;
}

std::vector<double> plane_point(int d, double x0, double x1) {
  std::vector<double> v(d, 0.0);
  v[0] = x0;
  v[1] = x1;
  return v;
}

// Four tight clusters whose per-party maximum-margin separators sit far from
// the shared one: each half of the plane pairs a barely-positive cluster
// with a far negative one (or the mirror image), so locally trained
// classifiers agree only on a thin outer region.
void interleaved_components(SyntheticSpec& spec, std::int64_t per_cluster,
                            std::int64_t flipped_per_cluster) {
  const int d = spec.dimension;
  const double s = 0.02;
  const struct {
    double x0, x1;
    int label;
  } clusters[4] = {{0.1, 2.0, 1}, {-2.0, 2.0, -1}, {2.0, -2.0, 1}, {-0.1, -2.0, -1}};
  for (const auto& c : clusters) {
    spec.components.push_back({plane_point(d, c.x0, c.x1), s, per_cluster, c.label});
    if (flipped_per_cluster > 0)
      spec.components.push_back(
          {plane_point(d, c.x0, c.x1), s, flipped_per_cluster, -c.label});
  }
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"synthetic1", "synthetic2",
                                                 "synthetic3", "synthetic4",
                                                 "synthetic5", "synthetic6"};
  return names;
}

SyntheticSpec preset(const std::string& name) {
  constexpr int d = 50;
  SyntheticSpec spec;
  spec.dimension = d;
  spec.seed = 0;

  if (name == "synthetic1") {
    // Two well separated blobs, dealt at random.
    spec.parties = 2;
    spec.components.push_back({axis_vector(d, 0, 0.6), 0.25, 5000, 1});
    spec.components.push_back({axis_vector(d, 0, -0.6), 0.25, 5000, -1});
    spec.ground_truth = {axis_vector(d, 0, 1.0), 0.0};
    spec.relabel_by_truth = true;
    spec.margin = 0.05;
    spec.partition = PartitionMode::random_split;
    return spec;
  }
  if (name == "synthetic2") {
    // Interleaved clusters split across parties by the second coordinate.
    spec.parties = 2;
    interleaved_components(spec, 2500, 0);
    spec.ground_truth = {axis_vector(d, 0, 1.0), 0.0};
    spec.relabel_by_truth = true;
    spec.margin = 0.05;
    spec.partition = PartitionMode::by_halfspace;
    spec.partition_direction = axis_vector(d, 1, 1.0);
    return spec;
  }
  if (name == "synthetic3") {
    // Heavily overlapping blobs with 5% contrarian mass; not separable.
    spec.parties = 2;
    spec.components.push_back({axis_vector(d, 0, 0.3), 0.4, 4750, 1});
    spec.components.push_back({axis_vector(d, 0, -0.3), 0.4, 4750, -1});
    spec.components.push_back({axis_vector(d, 0, 0.3), 0.4, 250, -1});
    spec.components.push_back({axis_vector(d, 0, -0.3), 0.4, 250, 1});
    spec.partition = PartitionMode::random_split;
    return spec;
  }
  if (name == "synthetic4") {
    // Eight stripes along the second coordinate, dealt whole to four
    // parties. Stripes alternate sides, so the two stripes party p receives
    // (p and p+4) share a side and local views are single-label apart from
    // the rare tail draws that cross the separator and relabel.
    spec.parties = 4;
    for (int j = 0; j < 8; ++j) {
      const double side = j % 2 == 0 ? 0.8 : -0.8;
      std::vector<double> mean = plane_point(d, side, -3.5 + 1.0 * j);
      spec.components.push_back({std::move(mean), 0.25, 2500, side > 0 ? 1 : -1});
    }
    spec.ground_truth = {axis_vector(d, 0, 1.0), 0.0};
    spec.relabel_by_truth = true;
    spec.margin = 0.05;
    spec.partition = PartitionMode::by_cluster;
    return spec;
  }
  if (name == "synthetic5") {
    // Separable but imbalanced: 70/30 class mass over four parties.
    spec.parties = 4;
    spec.components.push_back({axis_vector(d, 0, 0.6), 0.25, 14000, 1});
    spec.components.push_back({axis_vector(d, 0, -0.6), 0.25, 6000, -1});
    spec.ground_truth = {axis_vector(d, 0, 1.0), 0.0};
    spec.relabel_by_truth = true;
    spec.margin = 0.05;
    spec.partition = PartitionMode::random_split;
    return spec;
  }
  if (name == "synthetic6") {
    // The interleaved geometry with 2% label noise; not separable.
    spec.parties = 2;
    interleaved_components(spec, 2450, 50);
    spec.ground_truth = {axis_vector(d, 0, 1.0), 0.0};
    spec.margin = 0.05;
    spec.partition = PartitionMode::by_halfspace;
    spec.partition_direction = axis_vector(d, 1, 1.0);
    return spec;
  }
  throw std::invalid_argument("unknown preset '" + name +
                              "'; expected synthetic1..synthetic6");
}

const char* partition_mode_name(PartitionMode mode) {
  switch (mode) {
    case PartitionMode::random_split:
      return "random_split";
    case PartitionMode::by_cluster:
      return "by_cluster";
    case PartitionMode::by_halfspace:
      return "by_halfspace";
  }
  return "unknown";
}

}  // namespace distlearn
