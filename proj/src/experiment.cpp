#include "distlearn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>
#include <stdexcept>

#include "distlearn/datagen.hpp"
#include "distlearn/libsvm_io.hpp"

namespace distlearn {

const std::vector<std::string>& protocol_names() {
  static const std::vector<std::string> names = {
      "naive", "voting", "rand", "randemp", "maxmarg",
      "mwu",   "kparty_mwu", "mwuemp"};
  return names;
}

bool is_protocol_name(const std::string& name) {
  const auto& names = protocol_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

ProtocolResult run_protocol(const std::string& name,
                            const std::vector<Party>& parties,
                            const MwuConfig& cfg) {
  if (name == "naive") return run_naive(parties, cfg);
  if (name == "voting") return run_voting(parties, cfg);
  if (name == "rand") return run_rand(parties, cfg);
  if (name == "randemp") return run_randemp(parties, cfg);
  if (name == "maxmarg") return run_maxmarg(parties, cfg);
  if (name == "mwu") return run_mwu(parties, cfg);
  if (name == "kparty_mwu") return run_k_party(parties, cfg);
  if (name == "mwuemp") return run_mwuemp(parties, cfg);
  throw std::invalid_argument("unknown protocol '" + name + "'");
}

namespace {

std::vector<Party> to_parties(std::vector<WeightedDataset> data) {
  std::vector<Party> parties(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    parties[i].id = static_cast<int>(i);
    parties[i].data = std::move(data[i]);
  }
  return parties;
}

bool looks_like_preset(const std::string& dataset) {
  const auto& names = preset_names();
  return std::find(names.begin(), names.end(), dataset) != names.end();
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("run_experiment: trials must be positive");
  if (cfg.protocols.empty())
    throw std::invalid_argument("run_experiment: no protocols requested");
  for (const auto& p : cfg.protocols)
    if (!is_protocol_name(p)) throw std::invalid_argument("unknown protocol '" + p + "'");

  const bool from_preset = looks_like_preset(cfg.dataset);
  SyntheticSpec spec;
  std::vector<Party> fixed_parties;
  if (from_preset) {
    spec = preset(cfg.dataset);
    if (cfg.parties_override > 0) spec.parties = cfg.parties_override;
  } else {
    if (cfg.parties_override > 0)
      throw std::invalid_argument("run_experiment: party override needs a preset dataset");
    fixed_parties = to_parties(load_manifest_parties(cfg.dataset));
  }

  ExperimentResult out;
  out.dataset = cfg.dataset;
  out.epsilon = cfg.mwu.epsilon;
  out.trials = cfg.trials;
  out.seed = cfg.seed;

  std::vector<std::vector<double>> acc(cfg.protocols.size());
  std::vector<std::vector<double>> words(cfg.protocols.size());
  std::vector<std::vector<double>> rounds(cfg.protocols.size());

  for (int trial = 0; trial < cfg.trials; ++trial) {
    std::vector<Party> parties;
    if (from_preset) {
      spec.seed = cfg.seed + static_cast<std::uint64_t>(trial);
      parties = to_parties(generate_synthetic(spec));
    } else {
      parties = fixed_parties;
    }
    if (trial == 0) {
      out.parties = static_cast<int>(parties.size());
      out.dimension = parties.empty() ? 0 : parties[0].data.dimension;
    }
    MwuConfig run_cfg = cfg.mwu;
    run_cfg.seed = cfg.seed + static_cast<std::uint64_t>(trial);
    for (std::size_t p = 0; p < cfg.protocols.size(); ++p) {
      const ProtocolResult r = run_protocol(cfg.protocols[p], parties, run_cfg);
      acc[p].push_back(r.train_accuracy);
      words[p].push_back(static_cast<double>(r.ledger.total_words()));
      rounds[p].push_back(static_cast<double>(r.rounds_used));
    }
  }

  auto mean_of = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  for (std::size_t p = 0; p < cfg.protocols.size(); ++p) {
    ProtocolSummary row;
    row.protocol = cfg.protocols[p];
    row.accuracy_mean = mean_of(acc[p]);
    double var = 0.0;
    for (double x : acc[p]) var += (x - row.accuracy_mean) * (x - row.accuracy_mean);
    row.accuracy_std = std::sqrt(var / static_cast<double>(acc[p].size()));
    row.words_mean = mean_of(words[p]);
    row.rounds_mean = mean_of(rounds[p]);
    out.rows.push_back(std::move(row));
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<ExperimentResult>& results,
               bool timestamp_comment) {
  if (timestamp_comment) {
    char stamp[64];
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    out << "# generated " << stamp << '\n';
  }
  out << "dataset,protocol,k,d,epsilon,trials,acc_mean,acc_std,words_mean,"
         "words_vs_mwuemp,rounds_mean,seed\n";
  char buf[256];
  for (const auto& r : results) {
    double mwuemp_words = 0.0;
    bool have_ref = false;
    for (const auto& row : r.rows) {
      if (row.protocol == "mwuemp") {
        mwuemp_words = row.words_mean;
        have_ref = true;
      }
    }
    for (const auto& row : r.rows) {
      std::string ratio;
      if (have_ref && mwuemp_words > 0.0) {
        std::snprintf(buf, sizeof(buf), "%.2f", row.words_mean / mwuemp_words);
        ratio = buf;
      }
      std::snprintf(buf, sizeof(buf), "%s,%s,%d,%d,%g,%d,%.6f,%.6f,%.1f,%s,%.1f,%llu",
                    r.dataset.c_str(), row.protocol.c_str(), r.parties, r.dimension,
                    r.epsilon, r.trials, row.accuracy_mean, row.accuracy_std,
                    row.words_mean, ratio.c_str(), row.rounds_mean,
                    static_cast<unsigned long long>(r.seed));
      out << buf << '\n';
    }
  }
}

void write_markdown(std::ostream& out, const ExperimentResult& r) {
  char buf[256];
  out << "### " << r.dataset << " (k=" << r.parties << ", d=" << r.dimension
      << ", epsilon=" << r.epsilon << ", trials=" << r.trials << ", seed=" << r.seed
      << ")\n\n";
  out << "| protocol | accuracy | std | words | rounds |\n";
  out << "|---|---|---|---|---|\n";
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof(buf), "| %s | %.4f | %.4f | %.1f | %.1f |\n",
                  row.protocol.c_str(), row.accuracy_mean, row.accuracy_std,
                  row.words_mean, row.rounds_mean);
    out << buf;
  }
  out << '\n';
}

}  // namespace distlearn
