#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "distlearn/datagen.hpp"
#include "distlearn/experiment.hpp"
#include "distlearn/libsvm_io.hpp"

using namespace distlearn;
namespace fs = std::filesystem;

namespace {

std::vector<Party> tiny_parties() {
  SyntheticSpec spec;
  spec.dimension = 2;
  spec.parties = 2;
  spec.seed = 19;
  MixtureComponent pos;
  pos.mean = {0.8, 0.0};
  pos.spread = 0.2;
  pos.count = 16;
  pos.label = 1;
  MixtureComponent neg;
  neg.mean = {-0.8, 0.0};
  neg.spread = 0.2;
  neg.count = 16;
  neg.label = -1;
  spec.components = {pos, neg};
  auto data = generate_synthetic(spec);
  std::vector<Party> parties(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    parties[i].id = static_cast<int>(i);
    parties[i].data = std::move(data[i]);
  }
  return parties;
}

std::string write_tiny_manifest(const fs::path& dir) {
  const auto parties = tiny_parties();
  DatasetManifest m;
  m.name = "tiny";
  m.dimension = 2;
  m.seed = 19;
  m.partition = "random_split";
  for (std::size_t i = 0; i < parties.size(); ++i) {
    const std::string file = "party" + std::to_string(i) + ".svm";
    write_libsvm((dir / file).string(), parties[i].data);
    m.files.push_back(file);
    m.counts.push_back(static_cast<std::int64_t>(parties[i].data.size()));
  }
  const std::string path = (dir / "manifest.json").string();
  write_manifest(path, m);
  return path;
}

bool same_rows(const ExperimentResult& a, const ExperimentResult& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const ProtocolSummary& ra = a.rows[i];
    const ProtocolSummary& rb = b.rows[i];
    if (ra.protocol != rb.protocol || ra.accuracy_mean != rb.accuracy_mean ||
        ra.accuracy_std != rb.accuracy_std || ra.words_mean != rb.words_mean ||
        ra.rounds_mean != rb.rounds_mean)
      return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("protocols dispatch by name") {
  const std::vector<std::string> expected = {"naive", "voting",     "rand",
                                             "randemp", "maxmarg",  "mwu",
                                             "kparty_mwu", "mwuemp"};
  CHECK(protocol_names() == expected);
  for (const auto& name : expected) CHECK(is_protocol_name(name));
  CHECK(!is_protocol_name("bogus"));

  const auto parties = tiny_parties();
  MwuConfig cfg;
  cfg.sample_size_per_round = 4;
  cfg.rounds_override = 2;
  CHECK(run_protocol("naive", parties, cfg).rounds_used == 1);
  // The proportional and per-worker engines agree at two parties.
  const ProtocolResult a = run_protocol("kparty_mwu", parties, cfg);
  const ProtocolResult b = run_protocol("mwu", parties, cfg);
  CHECK(a.ledger.total_words() == b.ledger.total_words());
  CHECK(a.train_accuracy == b.train_accuracy);
  CHECK_THROWS_AS(run_protocol("bogus", parties, cfg), std::invalid_argument);
}

TEST_CASE("preset experiments redraw per trial and repeat exactly") {
  ExperimentConfig cfg;
  cfg.dataset = "synthetic3";
  cfg.protocols = {"voting"};
  cfg.trials = 2;
  cfg.seed = 11;

  const ExperimentResult a = run_experiment(cfg);
  CHECK(a.dataset == "synthetic3");
  CHECK(a.parties == 2);
  CHECK(a.dimension == 50);
  CHECK(a.trials == 2);
  REQUIRE(a.rows.size() == 1);
  CHECK(a.rows[0].protocol == "voting");
  CHECK(a.rows[0].words_mean == 51.0);
  CHECK(a.rows[0].rounds_mean == 1.0);
  CHECK(a.rows[0].accuracy_mean > 0.5);

  const ExperimentResult b = run_experiment(cfg);
  CHECK(same_rows(a, b));

  ExperimentConfig wide = cfg;
  wide.parties_override = 4;
  const ExperimentResult c = run_experiment(wide);
  CHECK(c.parties == 4);
  CHECK(c.rows[0].words_mean == 3 * 51.0);
}

TEST_CASE("manifest experiments hold the data fixed") {
  const fs::path dir = fs::temp_directory_path() / "distlearn_experiment";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string manifest = write_tiny_manifest(dir);

  ExperimentConfig cfg;
  cfg.dataset = manifest;
  cfg.protocols = {"voting", "mwu"};
  cfg.trials = 2;
  cfg.seed = 3;
  cfg.mwu.rounds_override = 2;
  cfg.mwu.sample_size_per_round = 5;

  const ExperimentResult r = run_experiment(cfg);
  CHECK(r.parties == 2);
  CHECK(r.dimension == 2);
  REQUIRE(r.rows.size() == 2);
  // One classifier from the lone worker.
  CHECK(r.rows[0].words_mean == 3.0);
  CHECK(r.rows[0].rounds_mean == 1.0);
  // Two rounds of classifier down plus five points up, identical per trial.
  CHECK(r.rows[1].words_mean == 2 * (3 + 5 * 3));
  CHECK(r.rows[1].rounds_mean == 2.0);

  ExperimentConfig bad = cfg;
  bad.parties_override = 3;
  CHECK_THROWS_AS(run_experiment(bad), std::invalid_argument);
  bad = cfg;
  bad.trials = 0;
  CHECK_THROWS_AS(run_experiment(bad), std::invalid_argument);
  bad = cfg;
  bad.protocols = {};
  CHECK_THROWS_AS(run_experiment(bad), std::invalid_argument);
  bad = cfg;
  bad.protocols = {"voting", "bogus"};
  CHECK_THROWS_AS(run_experiment(bad), std::invalid_argument);
  fs::remove_all(dir);
}

TEST_CASE("csv bytes are pinned") {
  ExperimentResult r;
  r.dataset = "toy";
  r.parties = 2;
  r.dimension = 3;
  r.epsilon = 0.05;
  r.trials = 2;
  r.seed = 9;
  ProtocolSummary voting;
  voting.protocol = "voting";
  voting.accuracy_mean = 0.75;
  voting.accuracy_std = 0.25;
  voting.words_mean = 50.0;
  voting.rounds_mean = 1.0;
  ProtocolSummary mwuemp;
  mwuemp.protocol = "mwuemp";
  mwuemp.accuracy_mean = 0.9625;
  mwuemp.accuracy_std = 0.0125;
  mwuemp.words_mean = 200.0;
  mwuemp.rounds_mean = 3.5;
  r.rows = {voting, mwuemp};

  std::ostringstream out;
  write_csv(out, {r}, false);
  CHECK(out.str() ==
        "dataset,protocol,k,d,epsilon,trials,acc_mean,acc_std,words_mean,"
        "words_vs_mwuemp,rounds_mean,seed\n"
        "toy,voting,2,3,0.05,2,0.750000,0.250000,50.0,0.25,1.0,9\n"
        "toy,mwuemp,2,3,0.05,2,0.962500,0.012500,200.0,1.00,3.5,9\n");

  // Without a reweighting reference row the ratio column stays empty.
  ExperimentResult solo = r;
  solo.rows = {voting};
  std::ostringstream out2;
  write_csv(out2, {solo}, false);
  CHECK(out2.str() ==
        "dataset,protocol,k,d,epsilon,trials,acc_mean,acc_std,words_mean,"
        "words_vs_mwuemp,rounds_mean,seed\n"
        "toy,voting,2,3,0.05,2,0.750000,0.250000,50.0,,1.0,9\n");

  std::ostringstream out3;
  write_csv(out3, {solo}, true);
  const std::string stamped = out3.str();
  CHECK(stamped.rfind("# generated ", 0) == 0);
  CHECK(stamped.find("Z\n") != std::string::npos);
  CHECK(stamped.find("dataset,protocol") != std::string::npos);
}

TEST_CASE("markdown summarises one experiment") {
  ExperimentResult r;
  r.dataset = "toy";
  r.parties = 2;
  r.dimension = 3;
  r.epsilon = 0.05;
  r.trials = 2;
  r.seed = 9;
  ProtocolSummary row;
  row.protocol = "naive";
  row.accuracy_mean = 1.0;
  row.accuracy_std = 0.0;
  row.words_mean = 28.0;
  row.rounds_mean = 1.0;
  r.rows = {row};

  std::ostringstream out;
  write_markdown(out, r);
  const std::string text = out.str();
  CHECK(text.find("### toy (k=2, d=3, epsilon=0.05, trials=2, seed=9)") !=
        std::string::npos);
  CHECK(text.find("| protocol | accuracy | std | words | rounds |") != std::string::npos);
  CHECK(text.find("| naive | 1.0000 | 0.0000 | 28.0 | 1.0 |") != std::string::npos);
}

}  // TEST_SUITE
