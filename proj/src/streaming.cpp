#include "distlearn/streaming.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace distlearn {

namespace {

constexpr double kViolationTol = 1e-9;
constexpr std::size_t kHeaderWords = 10;
constexpr std::size_t kRngWords = 4;

std::uint64_t pack(double v) { return std::bit_cast<std::uint64_t>(v); }
double unpack(std::uint64_t w) { return std::bit_cast<double>(w); }

}  // namespace

StreamRunResult stream_to_distributed(
    const StreamFactory& make,
    const std::vector<std::vector<std::vector<double>>>& chunks) {
  if (!make) throw std::invalid_argument("stream_to_distributed: empty factory");
  if (chunks.empty()) throw std::invalid_argument("stream_to_distributed: no chunks");
  const int k = static_cast<int>(chunks.size());

  StreamRunResult out;
  std::unique_ptr<StreamAlgorithm> alg = make();
  const std::int64_t declared = alg->declared_store_words();
  const int max_passes = alg->declared_passes();
  if (declared < 0) throw std::invalid_argument("stream_to_distributed: negative store size");
  if (max_passes < 1) throw std::invalid_argument("stream_to_distributed: no pass budget");

  auto hand_off = [&](int pass, int from, int to) {
    std::vector<std::uint64_t> store = alg->extract_store();
    if (static_cast<std::int64_t>(store.size()) > declared)
      throw std::logic_error("stream_to_distributed: store exceeds declared size");
    out.ledger.record(pass, from, to, declared, PayloadKind::store);
    alg = make();
    alg->restore(store);
    return store;
  };

  for (int pass = 1; pass <= max_passes; ++pass) {
    alg->start_pass();
    for (int owner = 0; owner < k; ++owner) {
      for (const auto& item : chunks[owner]) alg->consume(item);
      if (owner + 1 < k) hand_off(pass, owner, owner + 1);
    }
    alg->finish_pass();
    out.passes = pass;
    if (k > 1) {
      out.final_store = hand_off(pass, k - 1, 0);
    } else {
      out.final_store = alg->extract_store();
      if (static_cast<std::int64_t>(out.final_store.size()) > declared)
        throw std::logic_error("stream_to_distributed: store exceeds declared size");
    }
    if (alg->finished()) {
      out.finished = true;
      break;
    }
  }
  return out;
}

ReservoirLpSampler::ReservoirLpSampler(const ReservoirLpConfig& cfg)
    : cfg_(cfg), rng_(cfg.seed) {
  if (cfg_.dimension < 1)
    throw std::invalid_argument("reservoir lp: dimension must be positive");
  if (static_cast<int>(cfg_.lower.size()) != cfg_.dimension ||
      static_cast<int>(cfg_.upper.size()) != cfg_.dimension)
    throw std::invalid_argument("reservoir lp: box size mismatch");
  for (int j = 0; j < cfg_.dimension; ++j) {
    if (!std::isfinite(cfg_.lower[j]) || !std::isfinite(cfg_.upper[j]) ||
        cfg_.lower[j] > cfg_.upper[j])
      throw std::invalid_argument("reservoir lp: box must be finite and ordered");
  }
  if (!(cfg_.epsilon > 0.0 && cfg_.epsilon < 1.0))
    throw std::invalid_argument("reservoir lp: epsilon must be in (0,1)");
  if (cfg_.max_passes < 2)
    throw std::invalid_argument("reservoir lp: needs at least two passes");
  base_ = cfg_.base_sample > 0
              ? cfg_.base_sample
              : 25LL * cfg_.dimension * cfg_.dimension;
  x_.assign(cfg_.dimension, 0.0);
}

void ReservoirLpSampler::start_pass() {
  ++pass_;
  rows_seen_ = 0;
  violations_ = 0;
  eligible_seen_ = 0;
  reservoir_.clear();
}

void ReservoirLpSampler::consume(const std::vector<double>& item) {
  if (static_cast<int>(item.size()) != cfg_.dimension + 1)
    throw std::invalid_argument("reservoir lp: item size mismatch");
  ++rows_seen_;
  bool eligible = true;
  if (pass_ > 1) {
    double v = 0.0;
    for (int j = 0; j < cfg_.dimension; ++j) v += item[j] * x_[j];
    eligible = v < item[cfg_.dimension] - kViolationTol;
    if (eligible) ++violations_;
  }
  if (!eligible) return;
  ++eligible_seen_;
  if (static_cast<std::int64_t>(reservoir_.size()) < base_) {
    reservoir_.push_back(item);
  } else {
    const std::uint64_t j = rng_.below(static_cast<std::uint64_t>(eligible_seen_));
    if (j < static_cast<std::uint64_t>(base_)) reservoir_[j] = item;
  }
}

void ReservoirLpSampler::finish_pass() {
  last_rows_ = rows_seen_;
  last_violations_ = pass_ > 1 ? violations_ : -1;
  if (pass_ == 1) {
    subset_ = std::move(reservoir_);
    reservoir_.clear();
    solve_subset();
    return;
  }
  if (static_cast<double>(violations_) <=
      cfg_.epsilon * static_cast<double>(rows_seen_)) {
    finished_ = true;
    reservoir_.clear();
    return;
  }
  for (auto& row : reservoir_) subset_.push_back(std::move(row));
  reservoir_.clear();
  const std::size_t cap = static_cast<std::size_t>(4 * base_);
  if (subset_.size() > cap)
    subset_.erase(subset_.begin(),
                  subset_.begin() + static_cast<std::ptrdiff_t>(subset_.size() - cap));
  solve_subset();
}

void ReservoirLpSampler::solve_subset() {
  const int d = cfg_.dimension;
  if (subset_.empty()) {
    for (int j = 0; j < d; ++j) x_[j] = 0.5 * (cfg_.lower[j] + cfg_.upper[j]);
    has_candidate_ = true;
    return;
  }
  LinearProgram lp;
  lp.dimension = d;
  lp.objective.assign(d, 0.0);
  lp.lower = cfg_.lower;
  lp.upper = cfg_.upper;
  lp.rows.reserve(subset_.size());
  lp.rhs.reserve(subset_.size());
  for (const auto& row : subset_) {
    lp.rows.emplace_back(row.begin(), row.begin() + d);
    lp.rhs.push_back(row[d]);
  }
  const SimplexResult r = simplex_solve(lp);
  if (r.status != SolveStatus::optimal) {
    infeasible_ = true;
    finished_ = true;
    has_candidate_ = false;
    return;
  }
  x_ = r.x;
  has_candidate_ = true;
}

std::vector<std::uint64_t> ReservoirLpSampler::extract_store() const {
  const int d = cfg_.dimension;
  std::vector<std::uint64_t> s;
  s.reserve(kHeaderWords + kRngWords + static_cast<std::size_t>(d) +
            (subset_.size() + reservoir_.size()) * static_cast<std::size_t>(d + 1));
  s.push_back(1);  // layout version
  std::uint64_t flags = 0;
  if (finished_) flags |= 1;
  if (has_candidate_) flags |= 2;
  if (infeasible_) flags |= 4;
  s.push_back(flags);
  s.push_back(static_cast<std::uint64_t>(pass_));
  s.push_back(static_cast<std::uint64_t>(rows_seen_));
  s.push_back(static_cast<std::uint64_t>(violations_));
  s.push_back(static_cast<std::uint64_t>(eligible_seen_));
  s.push_back(static_cast<std::uint64_t>(subset_.size()));
  s.push_back(static_cast<std::uint64_t>(reservoir_.size()));
  s.push_back(static_cast<std::uint64_t>(last_rows_));
  s.push_back(static_cast<std::uint64_t>(last_violations_ + 1));  // -1 encodes as 0
  const auto st = rng_.state();
  for (std::uint64_t w : st) s.push_back(w);
  for (int j = 0; j < d; ++j) s.push_back(pack(x_[j]));
  for (const auto& row : subset_)
    for (double v : row) s.push_back(pack(v));
  for (const auto& row : reservoir_)
    for (double v : row) s.push_back(pack(v));
  return s;
}

void ReservoirLpSampler::restore(const std::vector<std::uint64_t>& store) {
  const int d = cfg_.dimension;
  const std::size_t fixed = kHeaderWords + kRngWords + static_cast<std::size_t>(d);
  if (store.size() < fixed || store[0] != 1)
    throw std::invalid_argument("reservoir lp: malformed store");
  const std::uint64_t flags = store[1];
  finished_ = (flags & 1) != 0;
  has_candidate_ = (flags & 2) != 0;
  infeasible_ = (flags & 4) != 0;
  pass_ = static_cast<int>(store[2]);
  rows_seen_ = static_cast<std::int64_t>(store[3]);
  violations_ = static_cast<std::int64_t>(store[4]);
  eligible_seen_ = static_cast<std::int64_t>(store[5]);
  const std::size_t n_subset = static_cast<std::size_t>(store[6]);
  const std::size_t n_reservoir = static_cast<std::size_t>(store[7]);
  last_rows_ = static_cast<std::int64_t>(store[8]);
  last_violations_ = static_cast<std::int64_t>(store[9]) - 1;
  if (store.size() !=
      fixed + (n_subset + n_reservoir) * static_cast<std::size_t>(d + 1))
    throw std::invalid_argument("reservoir lp: malformed store");
  std::size_t at = kHeaderWords;
  rng_.set_state({store[at], store[at + 1], store[at + 2], store[at + 3]});
  at += kRngWords;
  x_.resize(d);
  for (int j = 0; j < d; ++j) x_[j] = unpack(store[at++]);
  auto read_rows = [&](std::size_t count) {
    std::vector<std::vector<double>> rows(count, std::vector<double>(d + 1));
    for (auto& row : rows)
      for (double& v : row) v = unpack(store[at++]);
    return rows;
  };
  subset_ = read_rows(n_subset);
  reservoir_ = read_rows(n_reservoir);
}

std::int64_t ReservoirLpSampler::declared_store_words() const {
  const std::int64_t d = cfg_.dimension;
  return static_cast<std::int64_t>(kHeaderWords + kRngWords) + d +
         5 * base_ * (d + 1);
}

ReservoirLpResult reservoir_lp_solve(const std::vector<std::vector<double>>& rows,
                                     const ReservoirLpConfig& cfg) {
  ReservoirLpSampler alg(cfg);
  int passes = 0;
  for (int pass = 1; pass <= cfg.max_passes && !alg.finished(); ++pass) {
    alg.start_pass();
    for (const auto& row : rows) alg.consume(row);
    alg.finish_pass();
    passes = pass;
  }
  ReservoirLpResult out;
  out.converged = alg.finished() && !alg.subset_infeasible();
  out.infeasible = alg.subset_infeasible();
  if (alg.has_candidate()) out.x = alg.candidate();
  out.checked_rows = alg.last_pass_rows();
  out.violations = alg.last_pass_violations();
  out.passes = passes;
  return out;
}

ReservoirLpResult decode_reservoir_result(const std::vector<std::uint64_t>& store,
                                          const ReservoirLpConfig& cfg) {
  ReservoirLpSampler alg(cfg);
  alg.restore(store);
  ReservoirLpResult out;
  out.converged = alg.finished() && !alg.subset_infeasible();
  out.infeasible = alg.subset_infeasible();
  if (alg.has_candidate()) out.x = alg.candidate();
  out.checked_rows = alg.last_pass_rows();
  out.violations = alg.last_pass_violations();
  out.passes = alg.pass_index();
  return out;
}

}  // namespace distlearn
