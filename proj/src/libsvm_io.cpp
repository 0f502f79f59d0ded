#include "distlearn/libsvm_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace distlearn {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line,
                             const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::string dirname_of(const std::string& path) {
  const auto cut = path.find_last_of('/');
  if (cut == std::string::npos) return ".";
  if (cut == 0) return "/";
  return path.substr(0, cut);
}

}  // namespace

WeightedDataset read_libsvm(const std::string& path, int dimension) {
  if (dimension < 0) throw std::invalid_argument("read_libsvm: negative dimension");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_libsvm: cannot open " + path);

  struct SparseRow {
    int label;
    std::vector<std::pair<int, double>> entries;
  };
  std::vector<SparseRow> rows;
  int max_index = 0;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line
    if (tok[0] == '#') continue;

    SparseRow row;
    try {
      std::size_t used = 0;
      const double lv = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      if (lv == 1.0)
        row.label = 1;
      else if (lv == -1.0 || lv == 0.0)
        row.label = -1;
      else
        parse_fail(path, lineno, "label must be +1, -1, or 0");
    } catch (const std::logic_error&) {
      parse_fail(path, lineno, "bad label '" + tok + "'");
    }

    int prev_index = 0;
    while (ls >> tok) {
      if (tok[0] == '#') break;
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
        parse_fail(path, lineno, "bad feature '" + tok + "'");
      int index = 0;
      double value = 0.0;
      try {
        std::size_t used = 0;
        index = std::stoi(tok.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument(tok);
        const std::string vs = tok.substr(colon + 1);
        value = std::stod(vs, &used);
        if (used != vs.size()) throw std::invalid_argument(tok);
      } catch (const std::logic_error&) {
        parse_fail(path, lineno, "bad feature '" + tok + "'");
      }
      if (index < 1) parse_fail(path, lineno, "indices are 1-based");
      if (index <= prev_index)
        parse_fail(path, lineno, "indices must be strictly increasing");
      prev_index = index;
      max_index = std::max(max_index, index);
      row.entries.emplace_back(index, value);
    }
    rows.push_back(std::move(row));
  }

  if (dimension > 0 && max_index > dimension)
    throw std::runtime_error("read_libsvm: " + path + " has index " +
                             std::to_string(max_index) + " beyond dimension " +
                             std::to_string(dimension));
  const int d = dimension > 0 ? dimension : std::max(max_index, 1);

  WeightedDataset ds;
  ds.dimension = d;
  for (const auto& row : rows) {
    LabeledPoint p;
    p.label = row.label;
    p.coords.assign(d, 0.0);
    for (const auto& [idx, val] : row.entries) p.coords[idx - 1] = val;
    ds.push_back(std::move(p), 1.0);
  }
  return ds;
}

void write_libsvm(const std::string& path, const WeightedDataset& ds) {
  ds.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_libsvm: cannot open " + path);
  char buf[64];
  for (const auto& p : ds.points) {
    out << (p.label > 0 ? "+1" : "-1");
    for (int j = 0; j < ds.dimension; ++j) {
      if (p.coords[j] == 0.0) continue;
      std::snprintf(buf, sizeof(buf), " %d:%.17g", j + 1, p.coords[j]);
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_libsvm: write failed for " + path);
}

void write_manifest(const std::string& path, const DatasetManifest& m) {
  if (m.files.size() != m.counts.size())
    throw std::invalid_argument("write_manifest: files/counts size mismatch");
  nlohmann::json j;
  j["name"] = m.name;
  j["dimension"] = m.dimension;
  j["seed"] = m.seed;
  j["partition"] = m.partition;
  j["files"] = m.files;
  j["counts"] = m.counts;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_manifest: cannot open " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write_manifest: write failed for " + path);
}

DatasetManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_manifest: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("read_manifest: " + path + ": " + e.what());
  }
  DatasetManifest m;
  try {
    m.name = j.at("name").get<std::string>();
    m.dimension = j.at("dimension").get<int>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.partition = j.value("partition", std::string());
    m.files = j.at("files").get<std::vector<std::string>>();
    m.counts = j.at("counts").get<std::vector<std::int64_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("read_manifest: " + path + ": " + e.what());
  }
  if (m.files.size() != m.counts.size())
    throw std::runtime_error("read_manifest: files/counts size mismatch in " + path);
  if (m.files.empty()) throw std::runtime_error("read_manifest: no party files in " + path);
  return m;
}

std::vector<WeightedDataset> load_manifest_parties(const std::string& manifest_path) {
  const DatasetManifest m = read_manifest(manifest_path);
  const std::string dir = dirname_of(manifest_path);
  std::vector<WeightedDataset> parties;
  parties.reserve(m.files.size());
  for (std::size_t i = 0; i < m.files.size(); ++i) {
    WeightedDataset ds = read_libsvm(dir + "/" + m.files[i], m.dimension);
    if (static_cast<std::int64_t>(ds.size()) != m.counts[i])
      throw std::runtime_error("load_manifest_parties: " + m.files[i] + " has " +
                               std::to_string(ds.size()) + " rows, manifest says " +
                               std::to_string(m.counts[i]));
    parties.push_back(std::move(ds));
  }
  return parties;
}

}  // namespace distlearn
