#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "distlearn/protocols.hpp"

namespace distlearn {

const std::vector<std::string>& protocol_names();
bool is_protocol_name(const std::string& name);

// Dispatches by name: naive, voting, rand, randemp, maxmarg, mwu,
// kparty_mwu, mwuemp.
ProtocolResult run_protocol(const std::string& name,
                            const std::vector<Party>& parties,
                            const MwuConfig& cfg);

struct ExperimentConfig {
  std::string dataset;  // preset name or manifest path
  std::vector<std::string> protocols;
  int trials = 1;
  std::uint64_t seed = 0;
  MwuConfig mwu;
  int parties_override = 0;  // presets only; 0 keeps the preset's count
};

struct ProtocolSummary {
  std::string protocol;
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;  // population deviation over trials
  double words_mean = 0.0;
  double rounds_mean = 0.0;
};

struct ExperimentResult {
  std::string dataset;
  int parties = 0;
  int dimension = 0;
  double epsilon = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<ProtocolSummary> rows;
};

// Runs every named protocol for the configured number of trials. Preset
// datasets are redrawn per trial from seed + trial; manifest datasets are
// fixed and only the protocol seed varies.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// One row per (experiment, protocol). The optional leading comment line
// carries the wall-clock timestamp and is the only non-reproducible byte.
void write_csv(std::ostream& out, const std::vector<ExperimentResult>& results,
               bool timestamp_comment);
void write_markdown(std::ostream& out, const ExperimentResult& result);

}  // namespace distlearn
