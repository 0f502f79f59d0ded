#include "distlearn/learner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "distlearn/rng.hpp"
#include "distlearn/sampling.hpp"
#include "distlearn/simplex.hpp"

namespace distlearn {

namespace {

constexpr double kSepTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

double offset_cap(const WeightedDataset& ds) {
  double widest = 0.0;
  for (const auto& p : ds.points) {
    double norm1 = 0.0;
    for (double v : p.coords) norm1 += std::abs(v);
    widest = std::max(widest, norm1);
  }
  return 1.0 + widest;
}

// Any dataset with one label admits a constant-side classifier; the last
// coordinate plus a saturated offset keeps the normal nonzero.
LinearClassifier single_label_classifier(const WeightedDataset& ds, int label) {
  LinearClassifier c;
  c.normal.assign(ds.dimension, 0.0);
  c.normal.back() = 1.0;
  c.offset = label > 0 ? offset_cap(ds) : -offset_cap(ds);
  return c;
}

// Margin LP over the working subset: variables (w_1..w_d, b, delta),
// maximize delta. Returns (classifier, delta*).
std::pair<LinearClassifier, double> solve_margin_lp(
    const WeightedDataset& ds, const std::vector<std::size_t>& working, double b_cap) {
  const int d = ds.dimension;
  LinearProgram lp;
  lp.dimension = d + 2;
  lp.objective.assign(d + 2, 0.0);
  lp.objective[d + 1] = -1.0;  // minimize -delta
  lp.lower.assign(d + 2, -1.0);
  lp.upper.assign(d + 2, 1.0);
  lp.lower[d] = -b_cap;
  lp.upper[d] = b_cap;
  lp.lower[d + 1] = -(2.0 * b_cap + 1.0);  // never binding, keeps delta boxed
  lp.upper[d + 1] = 2.0 * b_cap + 1.0;
  for (std::size_t idx : working) {
    const auto& p = ds.points[idx];
    const double y = p.label;
    std::vector<double> row(d + 2, 0.0);
    for (int j = 0; j < d; ++j) row[j] = y * p.coords[j];
    row[d] = y;
    row[d + 1] = -1.0;
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(0.0);
  }
  SimplexResult res = simplex_solve(lp);
  if (res.status != SolveStatus::optimal)
    throw std::runtime_error("train: margin subproblem did not solve");
  LinearClassifier c;
  c.normal.assign(res.x.begin(), res.x.begin() + d);
  c.offset = res.x[d];
  return {std::move(c), res.x[d + 1]};
}

LinearClassifier train_hard(const WeightedDataset& ds) {
  const std::size_t n = ds.size();
  const int d = ds.dimension;
  bool has_pos = false, has_neg = false;
  for (const auto& p : ds.points) (p.label > 0 ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg)
    return single_label_classifier(ds, has_pos ? 1 : -1);

  const double b_cap = offset_cap(ds);
  std::vector<std::size_t> working;
  for (std::size_t i = 0; i < n && working.size() < static_cast<std::size_t>(2 * d + 6); ++i)
    working.push_back(i);
  std::vector<char> in_working(n, 0);
  for (std::size_t i : working) in_working[i] = 1;

  for (int round = 0; round < 10000; ++round) {
    auto [c, delta] = solve_margin_lp(ds, working, b_cap);
    if (delta <= kSepTol)
      throw InseparableError("train: no separating hyperplane exists");

    // Pull in the worst margin violators; optimal once none are left.
    const double accept = delta - 1e-9 * std::max(1.0, delta);
    std::vector<std::pair<double, std::size_t>> violated;
    for (std::size_t i = 0; i < n; ++i) {
      if (in_working[i]) continue;
      const auto& p = ds.points[i];
      const double margin = p.label * (dot(c.normal, p.coords) + c.offset);
      if (margin < accept) violated.push_back({margin, i});
    }
    if (violated.empty()) return c;
    std::sort(violated.begin(), violated.end());
    const std::size_t take = std::min<std::size_t>(violated.size(), 8);
    for (std::size_t t = 0; t < take; ++t) {
      working.push_back(violated[t].second);
      in_working[violated[t].second] = 1;
    }
  }
  throw std::runtime_error("train: active set did not converge");
}

LinearClassifier train_best_effort(const WeightedDataset& ds, const LearnerConfig& cfg) {
  const std::size_t n = ds.size();
  const int d = ds.dimension;
  std::vector<double> w(d, 0.0);
  double b = 0.0;

  auto current = [&]() {
    LinearClassifier c;
    c.normal = w;
    c.offset = b;
    // A zero normal decides by sign(offset) alone; substitute an equivalent
    // classifier with a real normal (boundary convention: b = 0 means +1).
    bool zero = true;
    for (double v : c.normal)
      if (v != 0.0) zero = false;
    if (zero) return single_label_classifier(ds, b >= 0.0 ? 1 : -1);
    return c;
  };

  LinearClassifier best = current();
  double best_err = weighted_error(best, ds);
  for (int epoch = 0; epoch < cfg.max_iterations && best_err > 0.0; ++epoch) {
    const auto visit = weighted_sample(
        ds, static_cast<std::int64_t>(n),
        mix_seed({cfg.seed, 0x70657263ULL, static_cast<std::uint64_t>(epoch)}));
    for (std::size_t idx : visit) {
      const auto& p = ds.points[idx];
      const double y = p.label;
      if (y * (dot(w, p.coords) + b) <= 0.0) {
        for (int j = 0; j < d; ++j) w[j] += y * p.coords[j];
        b += y;
      }
    }
    const LinearClassifier c = current();
    const double err = weighted_error(c, ds);
    if (err < best_err) {
      best_err = err;
      best = c;
    }
  }
  return best;
}

}  // namespace

LinearClassifier train(const WeightedDataset& ds, const LearnerConfig& cfg) {
  ds.validate();
  if (ds.size() == 0) throw std::invalid_argument("train: empty dataset");
  if (cfg.mode == LearnerMode::hard_separating) return train_hard(ds);
  return train_best_effort(ds, cfg);
}

std::vector<std::size_t> support_set(const WeightedDataset& ds,
                                     const LinearClassifier& c, double tol) {
  ds.validate();
  const double norm = std::sqrt(dot(c.normal, c.normal));
  if (!(norm > 0.0)) throw std::invalid_argument("support_set: zero normal");
  if (!(tol >= 0.0)) throw std::invalid_argument("support_set: negative tolerance");

  std::vector<double> margin(ds.size());
  std::vector<char> wrong(ds.size());
  double min_correct = kInf;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double v = dot(c.normal, ds.points[i].coords) + c.offset;
    margin[i] = std::abs(v) / norm;
    wrong[i] = classify(c, ds.points[i]) != ds.points[i].label;
    if (!wrong[i]) min_correct = std::min(min_correct, margin[i]);
  }
  std::vector<std::size_t> out;
  const double cut = min_correct + tol * std::max(1.0, min_correct);
  for (std::size_t i = 0; i < ds.size(); ++i)
    if (wrong[i] || margin[i] <= cut) out.push_back(i);
  return out;
}

}  // namespace distlearn
