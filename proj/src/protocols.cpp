#include "distlearn/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>
#include <stdexcept>

#include "distlearn/learner.hpp"
#include "distlearn/rng.hpp"
#include "distlearn/sampling.hpp"

namespace distlearn {

int guarantee_rounds(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("guarantee_rounds: epsilon must be in (0,1)");
  return static_cast<int>(std::ceil(5.0 * std::log2(1.0 / epsilon)));
}

int empirical_rounds(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("empirical_rounds: epsilon must be in (0,1)");
  const double base = std::log2(1.0 / epsilon);
  const double t = 5.0 * base * std::log2(base);
  return std::max(1, static_cast<int>(std::ceil(t)));
}

std::int64_t guarantee_sample_size(int dimension, double epsilon, double scale) {
  if (dimension < 1) throw std::invalid_argument("guarantee_sample_size: bad dimension");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("guarantee_sample_size: epsilon must be in (0,1)");
  if (!(scale > 0.0)) throw std::invalid_argument("guarantee_sample_size: bad scale");
  const double conf = std::max(1.0, std::log2(std::log2(1.0 / epsilon)));
  return static_cast<std::int64_t>(std::ceil(scale * 25.0 * dimension * conf));
}

namespace {

constexpr std::uint64_t kPurposeSample = 0x73616d70ULL;
constexpr std::uint64_t kPurposeAlloc = 0x616c6c6fULL;
constexpr std::uint64_t kPurposeLearn = 0x6c65726eULL;

void check_parties(const std::vector<Party>& parties, bool workers_may_be_empty) {
  if (parties.size() < 2)
    throw std::invalid_argument("protocol: need at least two parties");
  const int d = parties[0].data.dimension;
  for (const auto& p : parties) {
    p.data.validate();
    if (p.data.dimension != d)
      throw std::invalid_argument("protocol: party dimension mismatch");
  }
  if (parties[0].data.size() == 0)
    throw std::invalid_argument("protocol: coordinator dataset is empty");
  std::size_t worker_points = 0;
  for (std::size_t i = 1; i < parties.size(); ++i) {
    worker_points += parties[i].data.size();
    if (!workers_may_be_empty && parties[i].data.size() == 0)
      throw std::invalid_argument("protocol: worker dataset is empty");
  }
  if (worker_points == 0)
    throw std::invalid_argument("protocol: no worker-side points");
}

void check_config(const MwuConfig& cfg) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
    throw std::invalid_argument("protocol: epsilon must be in (0,1)");
  if (!(cfg.reweight > 0.0)) throw std::invalid_argument("protocol: reweight must be positive");
  if (!(cfg.error_budget > 0.0 && cfg.error_budget < 1.0))
    throw std::invalid_argument("protocol: error_budget must be in (0,1)");
  if (cfg.sample_size_per_round < 1)
    throw std::invalid_argument("protocol: sample size must be positive");
  if (cfg.rounds_override < 0)
    throw std::invalid_argument("protocol: negative rounds override");
}

WeightedDataset fresh_copy(const WeightedDataset& ds) {
  WeightedDataset out = ds;
  std::fill(out.weights.begin(), out.weights.end(), 1.0);
  return out;
}

WeightedDataset union_of(const std::vector<Party>& parties) {
  WeightedDataset out;
  out.dimension = parties[0].data.dimension;
  for (const auto& p : parties)
    for (const auto& pt : p.data.points) out.push_back(pt, 1.0);
  return out;
}

LinearClassifier learn_round(const WeightedDataset& ds, const MwuConfig& cfg,
                             std::uint64_t tag, bool* fell_back) {
  LearnerConfig hard;
  hard.mode = LearnerMode::hard_separating;
  try {
    return train(ds, hard);
  } catch (const InseparableError&) {
    if (fell_back) *fell_back = true;
    LearnerConfig soft;
    soft.mode = LearnerMode::best_effort;
    soft.max_iterations = 64;
    soft.seed = mix_seed({cfg.seed, tag, kPurposeLearn});
    return train(ds, soft);
  }
}

std::pair<double, double> reweight_accounted(WeightedDataset& ds,
                                             const LinearClassifier& c, double rho,
                                             std::vector<int>* counts,
                                             std::size_t count_offset) {
  double total = 0.0, wrong = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    total += ds.weights[i];
    if (classify(c, ds.points[i]) != ds.points[i].label) {
      wrong += ds.weights[i];
      ds.weights[i] *= 1.0 + rho;
      if (counts) ++(*counts)[count_offset + i];
    }
  }
  return {wrong, total};
}

// Shared engine for the reweighting family. proportional=false has every
// worker send the full per-round sample from its own weights; true gathers
// weight totals and splits one sample budget across workers. Both collapse to
// the identical two-party message sequence at k=2.
ProtocolResult run_reweighting(const std::vector<Party>& parties, const MwuConfig& cfg,
                               bool proportional, bool early_stop) {
  check_config(cfg);
  check_parties(parties, /*workers_may_be_empty=*/proportional);
  const int k = static_cast<int>(parties.size());
  const int d = parties[0].data.dimension;
  const int rounds = cfg.rounds_override > 0 ? cfg.rounds_override
                                             : guarantee_rounds(cfg.epsilon);
  const std::int64_t s = cfg.sample_size_per_round;

  Network net(k, d);
  WeightedDataset acc = fresh_copy(parties[0].data);
  std::vector<WeightedDataset> workers;
  std::vector<std::size_t> offsets;  // into misclassify_counts
  std::size_t n_b = 0;
  for (int i = 1; i < k; ++i) {
    offsets.push_back(n_b);
    workers.push_back(fresh_copy(parties[i].data));
    n_b += workers.back().size();
  }
  const WeightedDataset everyone = union_of(parties);

  ProtocolResult out;
  out.misclassify_counts.assign(n_b, 0);
  double phi = static_cast<double>(n_b);
  double scale_accum = 1.0;  // product of renormalization factors, <= 1
  out.potential_trace.push_back(phi);

  for (int t = 1; t <= rounds; ++t) {
    const LinearClassifier h =
        learn_round(acc, cfg, static_cast<std::uint64_t>(t), &out.used_fallback_learner);
    net.broadcast_classifier(t, 0, h);

    double wrong = 0.0, total = 0.0;
    for (int i = 1; i < k; ++i) {
      const Message m = net.receive(0, i);
      auto [w, tw] = reweight_accounted(workers[i - 1], m.classifier, cfg.reweight,
                                        &out.misclassify_counts, offsets[i - 1]);
      wrong += w;
      total += tw;
    }
    out.per_round_weighted_error.push_back(total > 0.0 ? wrong / total : 0.0);

    phi = 0.0;
    for (const auto& w : workers) phi += w.total_weight();
    if (phi > 1e300) {
      const double scale = static_cast<double>(n_b) / phi;
      for (auto& w : workers)
        for (double& v : w.weights) v *= scale;
      scale_accum *= scale;
      phi = 0.0;
      for (const auto& w : workers) phi += w.total_weight();
    }
    out.potential_trace.push_back(phi / scale_accum);

    // Sample allocation for this round.
    std::vector<std::int64_t> alloc;
    if (!proportional) {
      alloc.assign(k - 1, s);
    } else if (k == 2) {
      alloc.assign(1, s);
    } else {
      std::vector<double> totals(k - 1);
      for (int i = 1; i < k; ++i)
        net.send_scalar(t, i, 0, workers[i - 1].total_weight());
      for (int i = 1; i < k; ++i) totals[i - 1] = net.receive(i, 0).scalar;
      alloc = proportional_allocation(
          totals, s, mix_seed({cfg.seed, static_cast<std::uint64_t>(t), kPurposeAlloc}));
      // The coordinator's reply telling each worker its count rides an
      // uncharged control channel.
    }

    for (int i = 1; i < k; ++i) {
      std::vector<LabeledPoint> pts;
      const std::int64_t want = alloc[i - 1];
      if (want > 0) {
        const auto idx = weighted_sample(
            workers[i - 1], want,
            mix_seed({cfg.seed, static_cast<std::uint64_t>(t),
                      static_cast<std::uint64_t>(i), kPurposeSample}));
        pts.reserve(idx.size());
        for (std::size_t j : idx) pts.push_back(workers[i - 1].points[j]);
      }
      net.send_points(t, i, 0, std::move(pts));
    }
    for (int i = 1; i < k; ++i) {
      const Message m = net.receive(i, 0);
      for (const auto& p : m.points) acc.push_back(p, 1.0);
    }

    out.ensemble.members.push_back(h);
    out.rounds_used = t;
    if (early_stop &&
        ensemble_accuracy(out.ensemble, everyone) >=
            (1.0 - cfg.epsilon) * cfg.stop_reference)
      break;
  }

  out.train_accuracy = ensemble_accuracy(out.ensemble, everyone);
  out.ledger = net.ledger();
  return out;
}

}  // namespace

double mwu_reweight(WeightedDataset& ds, const LinearClassifier& c, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("mwu_reweight: rho must be positive");
  auto [wrong, total] = reweight_accounted(ds, c, rho, nullptr, 0);
  if (!(total > 0.0)) throw std::invalid_argument("mwu_reweight: total weight not positive");
  return wrong / total;
}

ProtocolResult run_two_party(const Party& a, const Party& b, const MwuConfig& cfg) {
  return run_reweighting({a, b}, cfg, /*proportional=*/false, cfg.early_stop);
}

ProtocolResult run_k_party(const std::vector<Party>& parties, const MwuConfig& cfg) {
  return run_reweighting(parties, cfg, /*proportional=*/true, cfg.early_stop);
}

ProtocolResult run_mwu(const std::vector<Party>& parties, const MwuConfig& cfg) {
  return run_reweighting(parties, cfg, /*proportional=*/false, cfg.early_stop);
}

ProtocolResult run_mwuemp(const std::vector<Party>& parties, const MwuConfig& cfg) {
  return run_reweighting(parties, cfg, /*proportional=*/true, /*early_stop=*/true);
}

ProtocolResult run_naive(const std::vector<Party>& parties, const MwuConfig& cfg) {
  check_config(cfg);
  check_parties(parties, /*workers_may_be_empty=*/true);
  const int k = static_cast<int>(parties.size());
  Network net(k, parties[0].data.dimension);

  WeightedDataset acc = fresh_copy(parties[0].data);
  for (int i = 1; i < k; ++i)
    net.send_points(1, i, 0, parties[i].data.points);
  for (int i = 1; i < k; ++i) {
    const Message m = net.receive(i, 0);
    for (const auto& p : m.points) acc.push_back(p, 1.0);
  }

  ProtocolResult out;
  out.used_fallback_learner = false;
  out.ensemble.members.push_back(learn_round(acc, cfg, 1, &out.used_fallback_learner));
  out.rounds_used = 1;
  out.train_accuracy = ensemble_accuracy(out.ensemble, union_of(parties));
  out.ledger = net.ledger();
  return out;
}

ProtocolResult run_voting(const std::vector<Party>& parties, const MwuConfig& cfg) {
  check_config(cfg);
  check_parties(parties, /*workers_may_be_empty=*/false);
  const int k = static_cast<int>(parties.size());
  Network net(k, parties[0].data.dimension);

  ProtocolResult out;
  // Coordinator's own vote plus one shipped classifier per worker: k voters.
  WeightedDataset own = fresh_copy(parties[0].data);
  out.ensemble.members.push_back(learn_round(own, cfg, 1, &out.used_fallback_learner));
  for (int i = 1; i < k; ++i) {
    WeightedDataset local = fresh_copy(parties[i].data);
    const LinearClassifier h =
        learn_round(local, cfg, static_cast<std::uint64_t>(100 + i), &out.used_fallback_learner);
    net.send_classifier(1, i, 0, h);
  }
  for (int i = 1; i < k; ++i) out.ensemble.members.push_back(net.receive(i, 0).classifier);

  out.rounds_used = 1;
  out.train_accuracy = ensemble_accuracy(out.ensemble, union_of(parties));
  out.ledger = net.ledger();
  return out;
}

namespace {

ProtocolResult run_uniform_sample_baseline(const std::vector<Party>& parties,
                                           const MwuConfig& cfg, std::int64_t per_worker) {
  check_config(cfg);
  check_parties(parties, /*workers_may_be_empty=*/false);
  const int k = static_cast<int>(parties.size());
  Network net(k, parties[0].data.dimension);

  WeightedDataset acc = fresh_copy(parties[0].data);
  for (int i = 1; i < k; ++i) {
    WeightedDataset local = fresh_copy(parties[i].data);
    const auto idx = weighted_sample(
        local, per_worker,
        mix_seed({cfg.seed, static_cast<std::uint64_t>(i), kPurposeSample}));
    std::vector<LabeledPoint> pts;
    pts.reserve(idx.size());
    for (std::size_t j : idx) pts.push_back(local.points[j]);
    net.send_points(1, i, 0, std::move(pts));
  }
  for (int i = 1; i < k; ++i) {
    const Message m = net.receive(i, 0);
    for (const auto& p : m.points) acc.push_back(p, 1.0);
  }

  ProtocolResult out;
  out.ensemble.members.push_back(learn_round(acc, cfg, 1, &out.used_fallback_learner));
  out.rounds_used = 1;
  out.train_accuracy = ensemble_accuracy(out.ensemble, union_of(parties));
  out.ledger = net.ledger();
  return out;
}

}  // namespace

ProtocolResult run_rand(const std::vector<Party>& parties, const MwuConfig& cfg) {
  SampleSizeParams p;
  p.epsilon = cfg.epsilon;
  p.nu = parties.empty() ? 1.0 : static_cast<double>(parties[0].data.dimension);
  return run_uniform_sample_baseline(parties, cfg, sample_size(p));
}

ProtocolResult run_randemp(const std::vector<Party>& parties, const MwuConfig& cfg) {
  const std::int64_t per_worker =
      parties.empty() ? 0 : 9LL * parties[0].data.dimension;
  return run_uniform_sample_baseline(parties, cfg, per_worker);
}

ProtocolResult run_maxmarg(const std::vector<Party>& parties, const MwuConfig& cfg) {
  check_config(cfg);
  check_parties(parties, /*workers_may_be_empty=*/false);
  const int k = static_cast<int>(parties.size());
  const int d = parties[0].data.dimension;
  Network net(k, d);

  std::int64_t naive_cost = 0;
  for (int i = 1; i < k; ++i)
    naive_cost += static_cast<std::int64_t>(parties[i].data.size()) * (d + 1);

  // Accumulated sets with exact-duplicate suppression so re-sent support
  // points do not grow the unions.
  std::vector<WeightedDataset> sets;
  std::vector<std::set<std::vector<std::uint64_t>>> seen(k);
  auto key_of = [d](const LabeledPoint& p) {
    std::vector<std::uint64_t> key(d + 1);
    std::memcpy(key.data(), p.coords.data(), sizeof(double) * d);
    key[d] = static_cast<std::uint64_t>(p.label + 2);
    return key;
  };
  for (int i = 0; i < k; ++i) {
    sets.push_back(fresh_copy(parties[i].data));
    for (const auto& p : parties[i].data.points) seen[i].insert(key_of(p));
  }
  auto add_new = [&](int party, const std::vector<LabeledPoint>& pts) {
    for (const auto& p : pts)
      if (seen[party].insert(key_of(p)).second) sets[party].push_back(p, 1.0);
  };

  const WeightedDataset everyone = union_of(parties);
  ProtocolResult out;
  LinearClassifier h = learn_round(sets[0], cfg, 0, &out.used_fallback_learner);

  for (int t = 1; t <= 500; ++t) {
    // Coordinator shares its support points; workers reply with theirs.
    const auto sp0 = support_set(sets[0], h, cfg.support_tolerance);
    std::vector<LabeledPoint> pts0;
    pts0.reserve(sp0.size());
    for (std::size_t j : sp0) pts0.push_back(sets[0].points[j]);
    for (int i = 1; i < k; ++i) net.send_points(t, 0, i, pts0);

    for (int i = 1; i < k; ++i) {
      add_new(i, net.receive(0, i).points);
      const LinearClassifier hi = learn_round(
          sets[i], cfg, static_cast<std::uint64_t>(1000 + t * 100 + i),
          &out.used_fallback_learner);
      const auto spi = support_set(sets[i], hi, cfg.support_tolerance);
      std::vector<LabeledPoint> pts;
      pts.reserve(spi.size());
      for (std::size_t j : spi) pts.push_back(sets[i].points[j]);
      net.send_points(t, i, 0, std::move(pts));
    }
    for (int i = 1; i < k; ++i) add_new(0, net.receive(i, 0).points);

    h = learn_round(sets[0], cfg, static_cast<std::uint64_t>(2000 + t),
                    &out.used_fallback_learner);
    out.rounds_used = t;

    MajorityEnsemble current;
    current.members.push_back(h);
    const double acc = ensemble_accuracy(current, everyone);
    if (acc >= (1.0 - cfg.epsilon) * cfg.stop_reference) break;
    if (net.ledger().total_words() >= naive_cost) break;
  }

  out.ensemble.members.push_back(h);
  out.train_accuracy = ensemble_accuracy(out.ensemble, everyone);
  out.ledger = net.ledger();
  return out;
}

}  // namespace distlearn
