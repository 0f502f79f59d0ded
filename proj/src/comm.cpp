#include "distlearn/comm.hpp"

#include <sstream>
#include <stdexcept>

namespace distlearn {

void CommLedger::record(int round, int sender, int receiver, std::int64_t words,
                        PayloadKind kind) {
  if (round < 0) throw std::invalid_argument("ledger: negative round");
  if (words < 0) throw std::invalid_argument("ledger: negative word count");
  total_ += words;
  if (per_round_.size() <= static_cast<std::size_t>(round))
    per_round_.resize(static_cast<std::size_t>(round) + 1, 0);
  per_round_[static_cast<std::size_t>(round)] += words;
  per_pair_[{sender, receiver}] += words;
  rows_.push_back({round, sender, receiver, words, kind});
}

std::int64_t CommLedger::words_of_kind(PayloadKind kind) const {
  std::int64_t s = 0;
  for (const auto& r : rows_)
    if (r.kind == kind) s += r.words;
  return s;
}

std::string CommLedger::to_csv(const std::string& run_id, const std::string& protocol) const {
  std::ostringstream out;
  out << "run_id,protocol,round,sender,receiver,words\n";
  for (const auto& r : rows_)
    out << run_id << ',' << protocol << ',' << r.round << ',' << r.sender << ','
        << r.receiver << ',' << r.words << '\n';
  return out.str();
}

Network::Network(int n_parties, int dimension)
    : n_parties_(n_parties), dimension_(dimension) {
  if (n_parties < 1) throw std::invalid_argument("network: need at least one party");
  if (dimension < 1) throw std::invalid_argument("network: dimension must be positive");
}

void Network::check_pair(int sender, int receiver) const {
  if (sender < 0 || sender >= n_parties_ || receiver < 0 || receiver >= n_parties_)
    throw std::invalid_argument("network: party id out of range");
  if (sender == receiver) throw std::invalid_argument("network: self-send");
}

void Network::deliver(Message m) {
  ledger_.record(m.round, m.sender, m.receiver, m.word_cost, m.kind);
  queues_[{m.sender, m.receiver}].push_back(std::move(m));
}

void Network::send_points(int round, int sender, int receiver,
                          std::vector<LabeledPoint> pts) {
  check_pair(sender, receiver);
  for (const auto& p : pts)
    if (static_cast<int>(p.coords.size()) != dimension_)
      throw std::invalid_argument("network: point dimension mismatch");
  Message m;
  m.round = round;
  m.sender = sender;
  m.receiver = receiver;
  m.kind = PayloadKind::points;
  m.word_cost = static_cast<std::int64_t>(pts.size()) * (dimension_ + 1);
  m.points = std::move(pts);
  deliver(std::move(m));
}

void Network::send_classifier(int round, int sender, int receiver,
                              const LinearClassifier& c) {
  check_pair(sender, receiver);
  if (static_cast<int>(c.normal.size()) != dimension_)
    throw std::invalid_argument("network: classifier dimension mismatch");
  Message m;
  m.round = round;
  m.sender = sender;
  m.receiver = receiver;
  m.kind = PayloadKind::classifier;
  m.classifier = c;
  m.word_cost = dimension_ + 1;
  deliver(std::move(m));
}

void Network::send_scalar(int round, int sender, int receiver, double value) {
  check_pair(sender, receiver);
  Message m;
  m.round = round;
  m.sender = sender;
  m.receiver = receiver;
  m.kind = PayloadKind::scalar;
  m.scalar = value;
  m.word_cost = 1;
  deliver(std::move(m));
}

void Network::send_store(int round, int sender, int receiver,
                         std::vector<std::uint64_t> store, std::int64_t declared_words) {
  check_pair(sender, receiver);
  if (declared_words < 0) throw std::invalid_argument("network: negative declared size");
  if (static_cast<std::int64_t>(store.size()) > declared_words)
    throw std::invalid_argument("network: store exceeds its declared word budget");
  Message m;
  m.round = round;
  m.sender = sender;
  m.receiver = receiver;
  m.kind = PayloadKind::store;
  m.store = std::move(store);
  m.word_cost = declared_words;
  deliver(std::move(m));
}

void Network::broadcast_classifier(int round, int sender, const LinearClassifier& c) {
  for (int p = 0; p < n_parties_; ++p)
    if (p != sender) send_classifier(round, sender, p, c);
}

Message Network::receive(int sender, int receiver) {
  auto it = queues_.find({sender, receiver});
  if (it == queues_.end() || it->second.empty())
    throw std::runtime_error("network: receive on empty channel");
  Message m = std::move(it->second.front());
  it->second.pop_front();
  return m;
}

bool Network::has_message(int sender, int receiver) const {
  auto it = queues_.find({sender, receiver});
  return it != queues_.end() && !it->second.empty();
}

}  // namespace distlearn
