#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "distlearn/datagen.hpp"
#include "distlearn/experiment.hpp"
#include "distlearn/libsvm_io.hpp"
#include "distlearn/mwu_lp.hpp"
#include "distlearn/rng.hpp"
#include "distlearn/streaming.hpp"

namespace {

using namespace distlearn;

struct CommonRunOpts {
  std::string dataset;
  std::vector<std::string> protocols;
  int trials = 3;
  std::uint64_t seed = 0;
  double epsilon = 0.05;
  int rounds = 0;
  std::int64_t sample = 100;
  double reweight = 0.75;
  int parties = 0;
  std::string csv;
  bool markdown = false;
  bool timestamp = false;
};

void add_run_opts(CLI::App* cmd, CommonRunOpts& o, bool with_protocols) {
  cmd->add_option("--dataset", o.dataset,
                  "preset name (synthetic1..synthetic6) or manifest path")
      ->required();
  if (with_protocols)
    cmd->add_option("--protocols", o.protocols, "comma separated protocol names")
        ->delimiter(',')
        ->required();
  cmd->add_option("--trials", o.trials, "independent trials (default 3)");
  cmd->add_option("--seed", o.seed, "base seed; trial t runs at seed+t");
  cmd->add_option("--epsilon", o.epsilon, "target error (default 0.05)");
  cmd->add_option("--rounds", o.rounds, "round override for the reweighting family");
  cmd->add_option("--sample", o.sample, "per-round sample size (default 100)");
  cmd->add_option("--reweight", o.reweight, "misclassified weight multiplier (default 0.75)");
  cmd->add_option("--parties", o.parties, "party count override, presets only");
  cmd->add_option("--csv", o.csv, "CSV output path, - for stdout");
  cmd->add_flag("--markdown", o.markdown, "print a summary table to stdout");
  cmd->add_flag("--timestamp", o.timestamp, "prefix CSV with a timestamp comment");
}

ExperimentConfig to_config(const CommonRunOpts& o) {
  ExperimentConfig cfg;
  cfg.dataset = o.dataset;
  cfg.protocols = o.protocols;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.parties_override = o.parties;
  cfg.mwu.epsilon = o.epsilon;
  cfg.mwu.rounds_override = o.rounds;
  cfg.mwu.sample_size_per_round = o.sample;
  cfg.mwu.reweight = o.reweight;
  return cfg;
}

void emit(const CommonRunOpts& o, const std::vector<ExperimentResult>& results) {
  const bool want_csv = !o.csv.empty();
  if (o.markdown || !want_csv)
    for (const auto& r : results) write_markdown(std::cout, r);
  if (!want_csv) return;
  if (o.csv == "-") {
    write_csv(std::cout, results, o.timestamp);
    return;
  }
  std::ofstream out(o.csv);
  if (!out) throw std::runtime_error("cannot open " + o.csv);
  write_csv(out, results, o.timestamp);
  if (!out) throw std::runtime_error("write failed for " + o.csv);
  std::cerr << "wrote " << o.csv << "\n";
}

int cmd_generate(const std::string& preset_name, const std::string& out_dir,
                 std::uint64_t seed, int parties) {
  SyntheticSpec spec = preset(preset_name);
  spec.seed = seed;
  if (parties > 0) spec.parties = parties;
  const auto data = generate_synthetic(spec);

  std::filesystem::create_directories(out_dir);
  DatasetManifest m;
  m.name = preset_name;
  m.dimension = spec.dimension;
  m.seed = seed;
  m.partition = partition_mode_name(spec.partition);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::string file = "party" + std::to_string(i) + ".libsvm";
    write_libsvm(out_dir + "/" + file, data[i]);
    m.files.push_back(file);
    m.counts.push_back(static_cast<std::int64_t>(data[i].size()));
  }
  write_manifest(out_dir + "/manifest.json", m);
  std::cout << "wrote " << data.size() << " party files and manifest.json to "
            << out_dir << "\n";
  return 0;
}

// Random box-feasible instance: rows pass through a margin around an
// interior point and are rescaled so no row can deviate by more than one
// word of slack across the box.
LinearProgram random_feasible_lp(int n, int d, double box, std::uint64_t seed,
                                 std::vector<double>* interior) {
  Rng rng(mix_seed({seed, 0x6c700000ULL}));
  LinearProgram lp;
  lp.dimension = d;
  lp.lower.assign(d, -box);
  lp.upper.assign(d, box);
  std::vector<double> x0(d);
  for (double& v : x0) v = rng.uniform(-0.5 * box, 0.5 * box);
  lp.objective.resize(d);
  double g2 = 0.0;
  for (double& v : lp.objective) {
    v = rng.normal();
    g2 += v * v;
  }
  for (double& v : lp.objective) v /= std::sqrt(g2);
  for (int i = 0; i < n; ++i) {
    std::vector<double> a(d);
    double a2 = 0.0;
    for (double& v : a) {
      v = rng.normal();
      a2 += v * v;
    }
    for (double& v : a) v /= std::sqrt(a2);
    double b = 0.0;
    for (int j = 0; j < d; ++j) b += a[j] * x0[j];
    b -= 0.1;
    double width = 0.0;
    for (int j = 0; j < d; ++j) width += std::abs(a[j]) * box;
    const double scale = std::max(1.0, width + std::abs(b));
    for (double& v : a) v /= scale;
    lp.rows.push_back(std::move(a));
    lp.rhs.push_back(b / scale);
  }
  if (interior) *interior = x0;
  return lp;
}

int cmd_lp(int n, int d, double epsilon, std::uint64_t seed, double tol) {
  std::vector<double> x0;
  LinearProgram lp = random_feasible_lp(n, d, 1.0, seed, &x0);
  double lo = 0.0, hi = 0.0;
  for (int j = 0; j < d; ++j) {
    lo -= std::abs(lp.objective[j]);
    hi += lp.objective[j] * x0[j];
  }
  MwuLpParams params;
  params.epsilon = epsilon;
  const LpSearchResult r = lp_binary_search(lp, lo, hi, tol, params);
  if (!r.feasible) {
    std::cout << "no probe accepted in [" << lo << ", " << hi << "] after "
              << r.probes << " probes\n";
    return 3;
  }
  double min_slack = r.slack.empty() ? 0.0 : r.slack[0];
  for (double s : r.slack) min_slack = std::min(min_slack, s);
  std::cout << "objective value " << r.upper << " (bracket width "
            << r.upper - r.lower << ", " << r.probes << " probes)\n";
  std::cout << "min row slack " << min_slack << " at tolerance " << epsilon << "\n";
  return 0;
}

int cmd_stream_lp(int n, int d, int parties, double epsilon, std::uint64_t seed,
                  int passes) {
  const double box = 2.0;
  LinearProgram lp = random_feasible_lp(n, d, box, seed, nullptr);

  std::vector<std::vector<double>> rows;
  for (int i = 0; i < n; ++i) {
    std::vector<double> item = lp.rows[i];
    item.push_back(lp.rhs[i]);
    rows.push_back(std::move(item));
  }
  std::vector<std::vector<std::vector<double>>> chunks(parties);
  for (int i = 0; i < n; ++i)
    chunks[static_cast<std::size_t>(i) * parties / n].push_back(rows[i]);

  ReservoirLpConfig cfg;
  cfg.dimension = d;
  cfg.lower.assign(d, -box);
  cfg.upper.assign(d, box);
  cfg.epsilon = epsilon;
  cfg.max_passes = passes;
  cfg.seed = seed;
  const auto run = stream_to_distributed(
      [&cfg]() { return std::make_unique<ReservoirLpSampler>(cfg); }, chunks);
  const ReservoirLpResult r = decode_reservoir_result(run.final_store, cfg);

  std::cout << "passes " << run.passes << ", store hand-off words "
            << run.ledger.total_words() << "\n";
  if (r.infeasible) {
    std::cout << "sampled subsystem infeasible\n";
    return 3;
  }
  std::int64_t violations = 0;
  for (const auto& row : rows) {
    double v = 0.0;
    for (int j = 0; j < d; ++j) v += row[j] * r.x[j];
    if (v < row[d] - 1e-9) ++violations;
  }
  std::cout << "candidate violates " << violations << " of " << n << " rows"
            << " (pass count " << r.violations << ")\n";
  if (!r.converged) {
    std::cout << "pass budget exhausted before the violation target\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributed linear classification and LP simulator"};
  app.require_subcommand(1);

  std::string gen_preset, gen_out;
  std::uint64_t gen_seed = 0;
  int gen_parties = 0;
  CLI::App* gen = app.add_subcommand("generate", "write a preset dataset to disk");
  gen->add_option("--preset", gen_preset, "synthetic1..synthetic6")->required();
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--seed", gen_seed, "generation seed");
  gen->add_option("--parties", gen_parties, "party count override");

  CommonRunOpts run_opts;
  CLI::App* run = app.add_subcommand("run", "run protocols and summarize");
  add_run_opts(run, run_opts, true);

  CommonRunOpts cmp_opts;
  CLI::App* cmp = app.add_subcommand("compare", "run every protocol on one dataset");
  add_run_opts(cmp, cmp_opts, false);

  CommonRunOpts sweep_opts;
  std::vector<double> sweep_epsilons;
  CLI::App* sweep = app.add_subcommand("sweep", "repeat a run across epsilons");
  add_run_opts(sweep, sweep_opts, true);
  sweep->add_option("--epsilons", sweep_epsilons, "comma separated epsilon values")
      ->delimiter(',')
      ->required();

  int lp_rows = 40, lp_dim = 4;
  double lp_eps = 0.05, lp_tol = 1e-3;
  std::uint64_t lp_seed = 1;
  CLI::App* lp = app.add_subcommand("lp", "minimize over a random feasible system");
  lp->add_option("--rows", lp_rows, "constraint count (default 40)");
  lp->add_option("--dim", lp_dim, "variable count (default 4)");
  lp->add_option("--epsilon", lp_eps, "slack tolerance (default 0.05)");
  lp->add_option("--seed", lp_seed, "instance seed");
  lp->add_option("--tol", lp_tol, "bisection bracket width (default 1e-3)");

  int sl_rows = 500, sl_dim = 2, sl_parties = 4, sl_passes = 8;
  double sl_eps = 0.05;
  std::uint64_t sl_seed = 1;
  CLI::App* sl = app.add_subcommand("stream-lp", "stream a random system through parties");
  sl->add_option("--rows", sl_rows, "constraint count (default 500)");
  sl->add_option("--dim", sl_dim, "variable count (default 2)");
  sl->add_option("--parties", sl_parties, "chunk owners (default 4)");
  sl->add_option("--epsilon", sl_eps, "allowed violating fraction (default 0.05)");
  sl->add_option("--seed", sl_seed, "instance and sampler seed");
  sl->add_option("--passes", sl_passes, "pass budget (default 8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) return cmd_generate(gen_preset, gen_out, gen_seed, gen_parties);
    if (*run) {
      const auto result = run_experiment(to_config(run_opts));
      emit(run_opts, {result});
      return 0;
    }
    if (*cmp) {
      cmp_opts.protocols = protocol_names();
      cmp_opts.markdown = true;
      const auto result = run_experiment(to_config(cmp_opts));
      emit(cmp_opts, {result});
      return 0;
    }
    if (*sweep) {
      std::vector<ExperimentResult> results;
      for (double eps : sweep_epsilons) {
        CommonRunOpts o = sweep_opts;
        o.epsilon = eps;
        results.push_back(run_experiment(to_config(o)));
      }
      emit(sweep_opts, results);
      return 0;
    }
    if (*lp) return cmd_lp(lp_rows, lp_dim, lp_eps, lp_seed, lp_tol);
    if (*sl) return cmd_stream_lp(sl_rows, sl_dim, sl_parties, sl_eps, sl_seed, sl_passes);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
