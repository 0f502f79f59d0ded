#include "distlearn/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "distlearn/rng.hpp"

namespace distlearn {

std::int64_t sample_size(const SampleSizeParams& p) {
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0))
    throw std::invalid_argument("sample_size: epsilon must be in (0,1)");
  if (!(p.nu >= 1.0)) throw std::invalid_argument("sample_size: nu must be >= 1");
  if (!(p.scale > 0.0)) throw std::invalid_argument("sample_size: scale must be positive");
  if (!(p.failure_prob > 0.0 && p.failure_prob < 1.0))
    throw std::invalid_argument("sample_size: failure_prob must be in (0,1)");
  const double ratio = p.nu / p.epsilon;
  const double log_branch = ratio * std::log2(ratio);
  const double quad_branch = p.nu / (p.epsilon * p.epsilon);
  const double confidence = std::max(1.0, std::log2(1.0 / p.failure_prob));
  return static_cast<std::int64_t>(
      std::ceil(p.scale * std::min(log_branch, quad_branch) * confidence));
}

namespace {

// Prefix-sum CDF; draws map through upper_bound so zero-weight entries are
// never selected.
std::vector<double> prefix_sums(const std::vector<double>& w) {
  std::vector<double> cum(w.size());
  double run = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0)) throw std::invalid_argument("sampling: negative weight");
    run += w[i];
    cum[i] = run;
  }
  return cum;
}

std::size_t draw_index(const std::vector<double>& cum, Rng& rng) {
  const double u = rng.next_double() * cum.back();
  auto it = std::upper_bound(cum.begin(), cum.end(), u);
  std::size_t idx = static_cast<std::size_t>(it - cum.begin());
  if (idx >= cum.size()) idx = cum.size() - 1;  // guard rounding at the top end
  return idx;
}

}  // namespace

std::vector<std::size_t> weighted_sample(const WeightedDataset& ds, std::int64_t m,
                                         std::uint64_t seed) {
  if (m < 0) throw std::invalid_argument("weighted_sample: negative sample size");
  auto cum = prefix_sums(ds.weights);
  if (cum.empty() || !(cum.back() > 0.0))
    throw std::invalid_argument("weighted_sample: total weight not positive");
  Rng rng(seed);
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) out.push_back(draw_index(cum, rng));
  return out;
}

std::vector<std::int64_t> proportional_allocation(const std::vector<double>& sizes,
                                                  std::int64_t s, std::uint64_t seed) {
  if (s < 0) throw std::invalid_argument("proportional_allocation: negative total");
  auto cum = prefix_sums(sizes);
  if (cum.empty() || !(cum.back() > 0.0))
    throw std::invalid_argument("proportional_allocation: all sizes zero");
  Rng rng(seed);
  std::vector<std::int64_t> counts(sizes.size(), 0);
  for (std::int64_t i = 0; i < s; ++i) ++counts[draw_index(cum, rng)];
  return counts;
}

}  // namespace distlearn
