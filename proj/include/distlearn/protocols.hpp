#pragma once

#include <cstdint>
#include <vector>

#include "distlearn/comm.hpp"
#include "distlearn/core_types.hpp"

namespace distlearn {

// Round budget giving the majority-vote guarantee: ceil(5 * log2(1/epsilon)).
int guarantee_rounds(double epsilon);

// Cheaper empirically motivated budget: ceil(5*log2(1/eps)*log2(log2(1/eps))),
// floored at 1.
int empirical_rounds(double epsilon);

// Per-round sample size for the guaranteed protocol:
// ceil(scale * 25 * d * max(1, log2(log2(1/epsilon)))).
std::int64_t guarantee_sample_size(int dimension, double epsilon, double scale = 1.0);

struct MwuConfig {
  double epsilon = 0.05;
  double reweight = 0.75;               // rho: misclassified weights scale by 1+rho
  double error_budget = 0.2;            // c: per-round weighted error the analysis tolerates
  std::int64_t sample_size_per_round = 100;
  int rounds_override = 0;              // 0 means guarantee_rounds(epsilon)
  bool early_stop = false;              // stop once ensemble accuracy >= (1-eps)*stop_reference
  double stop_reference = 1.0;          // best attainable accuracy (1.0 when separable)
  double support_tolerance = 1e-6;      // support-set tolerance for the margin-exchange baseline
  std::uint64_t seed = 0;
};

// potential_trace[u] is the total worker-side weight after u reweight steps
// (index 0 is the initial point count), so it has rounds_used+1 entries.
// per_round_weighted_error[t-1] is round t's classifier error measured against
// the weights that round's training sample was drawn from (pre-update).
// misclassify_counts holds, per worker-side point (party order), how many round
// classifiers got it wrong. rounds_used equals |ensemble.members| for the
// reweighting protocols; one-shot baselines report their honest round count
// (1, or the exchange count for the support-point protocol) with a one- or
// k-member ensemble.
struct ProtocolResult {
  MajorityEnsemble ensemble;
  CommLedger ledger;
  int rounds_used = 0;
  std::vector<double> per_round_weighted_error;
  std::vector<double> potential_trace;
  std::vector<int> misclassify_counts;
  double train_accuracy = 0.0;
  bool used_fallback_learner = false;  // some round hit an inseparable training set
};

// Multiplies the weight of every point misclassified by c by (1 + rho).
// Returns the weighted error measured before the update.
double mwu_reweight(WeightedDataset& ds, const LinearClassifier& c, double rho);

// Interactive reweighting protocol, coordinator a / worker b: each round the
// coordinator trains on its accumulated set and sends the classifier; the
// worker reweights, then sends a fresh weighted sample of
// cfg.sample_size_per_round points (every round, including the last).
ProtocolResult run_two_party(const Party& a, const Party& b, const MwuConfig& cfg);

// k-party coordinator protocol: workers report their total weights (charged
// one word each; skipped at k=2 where the split is trivial), the per-round
// sample budget is split across workers proportionally to those weights, and
// the classifier is broadcast back. Reduces to run_two_party exactly at k=2.
ProtocolResult run_k_party(const std::vector<Party>& parties, const MwuConfig& cfg);

// Reweighting baseline where every worker runs its own weight loop and sends
// the full cfg.sample_size_per_round points each round; per-round cost
// ((d+1)s + (d+1))(k-1). Identical to run_two_party at k=2.
ProtocolResult run_mwu(const std::vector<Party>& parties, const MwuConfig& cfg);

// run_k_party with early stopping on (1 - epsilon) * stop_reference accuracy.
ProtocolResult run_mwuemp(const std::vector<Party>& parties, const MwuConfig& cfg);

// One-shot baselines. naive: workers ship everything. voting: workers ship
// their local classifiers and all k vote. rand: each worker ships a uniform
// sample of sample_size(eps, nu=d) points. randemp: 9d points instead.
ProtocolResult run_naive(const std::vector<Party>& parties, const MwuConfig& cfg);
ProtocolResult run_voting(const std::vector<Party>& parties, const MwuConfig& cfg);
ProtocolResult run_rand(const std::vector<Party>& parties, const MwuConfig& cfg);
ProtocolResult run_randemp(const std::vector<Party>& parties, const MwuConfig& cfg);

// Iterative support-point exchange: per round the coordinator broadcasts its
// support points, workers reply with theirs, everyone retrains on the union
// (deduplicated). Stops when train accuracy reaches (1-eps)*stop_reference or
// the accumulated cost reaches the naive baseline's cost.
ProtocolResult run_maxmarg(const std::vector<Party>& parties, const MwuConfig& cfg);

}  // namespace distlearn
