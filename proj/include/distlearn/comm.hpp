#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "distlearn/core_types.hpp"

namespace distlearn {

// Word accounting: a d-dimensional point costs d+1 words (coordinates plus
// label), a classifier costs d+1 (normal plus offset), a bare scalar costs 1,
// and an opaque store costs its declared word length.
enum class PayloadKind { points, classifier, scalar, store };

struct Party {
  int id = 0;
  WeightedDataset data;
  std::uint64_t rng_stream = 0;
};

struct Message {
  int round = 0;
  int sender = 0;
  int receiver = 0;
  PayloadKind kind = PayloadKind::scalar;
  std::vector<LabeledPoint> points;
  LinearClassifier classifier;
  double scalar = 0.0;
  std::vector<std::uint64_t> store;
  std::int64_t word_cost = 0;
};

struct LedgerRow {
  int round = 0;
  int sender = 0;
  int receiver = 0;
  std::int64_t words = 0;
  PayloadKind kind = PayloadKind::scalar;
};

class CommLedger {
 public:
  void record(int round, int sender, int receiver, std::int64_t words, PayloadKind kind);

  std::int64_t total_words() const { return total_; }
  // Index t holds the words charged in round t (rounds are 1-based; index 0
  // collects anything charged outside a round).
  const std::vector<std::int64_t>& per_round() const { return per_round_; }
  const std::map<std::pair<int, int>, std::int64_t>& per_pair() const { return per_pair_; }
  std::int64_t words_of_kind(PayloadKind kind) const;
  const std::vector<LedgerRow>& rows() const { return rows_; }

  // One CSV line per recorded message: run_id,protocol,round,sender,receiver,words.
  std::string to_csv(const std::string& run_id, const std::string& protocol) const;

 private:
  std::int64_t total_ = 0;
  std::vector<std::int64_t> per_round_;
  std::map<std::pair<int, int>, std::int64_t> per_pair_;
  std::vector<LedgerRow> rows_;
};

// Synchronous message fabric between k parties: send charges the ledger and
// enqueues; receive pops in FIFO order per (sender, receiver) pair, so
// delivery is reliable and ordered. Self-sends and dimension mismatches throw.
class Network {
 public:
  Network(int n_parties, int dimension);

  void send_points(int round, int sender, int receiver, std::vector<LabeledPoint> pts);
  void send_classifier(int round, int sender, int receiver, const LinearClassifier& c);
  void send_scalar(int round, int sender, int receiver, double value);
  void send_store(int round, int sender, int receiver, std::vector<std::uint64_t> store,
                  std::int64_t declared_words);
  // k-1 unicasts of the same classifier; costs (k-1)(d+1) words.
  void broadcast_classifier(int round, int sender, const LinearClassifier& c);

  Message receive(int sender, int receiver);
  bool has_message(int sender, int receiver) const;

  int n_parties() const { return n_parties_; }
  int dimension() const { return dimension_; }
  CommLedger& ledger() { return ledger_; }
  const CommLedger& ledger() const { return ledger_; }

 private:
  void check_pair(int sender, int receiver) const;
  void deliver(Message m);

  int n_parties_;
  int dimension_;
  CommLedger ledger_;
  std::map<std::pair<int, int>, std::deque<Message>> queues_;
};

}  // namespace distlearn
