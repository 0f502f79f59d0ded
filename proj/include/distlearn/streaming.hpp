#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "distlearn/comm.hpp"
#include "distlearn/rng.hpp"
#include "distlearn/simplex.hpp"

namespace distlearn {

// Multi-pass streaming algorithm whose entire state travels as a flat word
// store between passes and between machines. Items are flat double vectors;
// what they encode is up to the concrete algorithm.
class StreamAlgorithm {
 public:
  virtual ~StreamAlgorithm() = default;
  virtual void start_pass() = 0;
  virtual void consume(const std::vector<double>& item) = 0;
  virtual void finish_pass() = 0;
  virtual bool finished() const = 0;
  virtual std::vector<std::uint64_t> extract_store() const = 0;
  virtual void restore(const std::vector<std::uint64_t>& store) = 0;
  virtual std::int64_t declared_store_words() const = 0;
  virtual int declared_passes() const = 0;
};

using StreamFactory = std::function<std::unique_ptr<StreamAlgorithm>()>;

struct StreamRunResult {
  std::vector<std::uint64_t> final_store;
  CommLedger ledger;
  int passes = 0;
  bool finished = false;
};

// Runs the algorithm over the concatenation of the chunks, one party per
// chunk, until it reports finished at a pass boundary or the declared pass
// budget runs out. Each pass hands the store along the ring: chunk owners in
// order, then a wrap back to the first, so a k-party pass costs k hand-offs
// of declared_store_words each (zero hand-offs when k is 1). Every hand-off
// rebuilds the algorithm from the store alone, so the result depends only on
// the concatenated item order, and a store exceeding its declared size
// throws.
StreamRunResult stream_to_distributed(
    const StreamFactory& make,
    const std::vector<std::vector<std::vector<double>>>& chunks);

struct ReservoirLpConfig {
  int dimension = 0;
  std::vector<double> lower;       // finite variable box, one entry per coordinate
  std::vector<double> upper;
  std::int64_t base_sample = 0;    // reservoir size per pass; 0 means 25 * dimension^2
  double epsilon = 0.05;           // allowed violating fraction of the stream
  int max_passes = 8;
  std::uint64_t seed = 0;
};

// Streamed approximate feasibility for rows a*x >= b, one item per row laid
// out as the coefficients followed by the right-hand side. The first pass
// reservoir-samples rows and solves them; each later pass counts violators
// of the current candidate, samples from them, merges the sample into the
// working subset (capped at four reservoirs), and re-solves. Finishes when a
// pass sees at most an epsilon fraction of violating rows.
class ReservoirLpSampler final : public StreamAlgorithm {
 public:
  explicit ReservoirLpSampler(const ReservoirLpConfig& cfg);

  void start_pass() override;
  void consume(const std::vector<double>& item) override;
  void finish_pass() override;
  bool finished() const override { return finished_; }
  std::vector<std::uint64_t> extract_store() const override;
  void restore(const std::vector<std::uint64_t>& store) override;
  std::int64_t declared_store_words() const override;
  int declared_passes() const override { return cfg_.max_passes; }

  bool has_candidate() const { return has_candidate_; }
  bool subset_infeasible() const { return infeasible_; }
  const std::vector<double>& candidate() const { return x_; }
  int pass_index() const { return pass_; }
  std::int64_t last_pass_rows() const { return last_rows_; }
  std::int64_t last_pass_violations() const { return last_violations_; }

 private:
  void solve_subset();

  ReservoirLpConfig cfg_;
  std::int64_t base_;
  bool finished_ = false;
  bool has_candidate_ = false;
  bool infeasible_ = false;
  int pass_ = 0;
  std::int64_t rows_seen_ = 0;
  std::int64_t violations_ = 0;
  std::int64_t eligible_seen_ = 0;
  std::int64_t last_rows_ = 0;
  std::int64_t last_violations_ = 0;
  Rng rng_;
  std::vector<double> x_;
  std::vector<std::vector<double>> subset_;
  std::vector<std::vector<double>> reservoir_;
};

struct ReservoirLpResult {
  bool converged = false;   // finished with a candidate within the budget
  bool infeasible = false;  // some solved subset had no point in the box
  std::vector<double> x;
  std::int64_t checked_rows = 0;  // rows seen by the last completed pass
  std::int64_t violations = 0;    // violating rows in that pass
  int passes = 0;
};

// Convenience single-machine driver over the full row list.
ReservoirLpResult reservoir_lp_solve(const std::vector<std::vector<double>>& rows,
                                     const ReservoirLpConfig& cfg);

// Reconstructs the outcome from a store produced by a distributed run.
ReservoirLpResult decode_reservoir_result(const std::vector<std::uint64_t>& store,
                                          const ReservoirLpConfig& cfg);

}  // namespace distlearn
