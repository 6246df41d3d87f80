#include "mclab/io.hpp"

#include "mclab/error.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>

namespace mclab {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path + "/" + key, "missing field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

std::size_t index(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ConfigError(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

json space_json(const StateSpace& s) { return json{{"labels", s.labels()}}; }

std::optional<StateSpace> space_from(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("space")) return std::nullopt;
  const auto& labels = field(j["space"], "labels", path + "/space");
  if (!labels.is_array()) throw ConfigError(path + "/space/labels", "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].is_string()) throw ConfigError(path + "/space/labels/" + std::to_string(i), "expected a string");
    out.push_back(labels[i].get<std::string>());
  }
  try {
    return StateSpace(std::move(out));
  } catch (const InvalidArgument& e) {
    throw ConfigError(path + "/space/labels", e.what());
  }
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json kernel_json(const StochasticKernel& k, bool with_space) {
  json j;
  if (with_space) j["space"] = space_json(k.space());
  j["matrix"] = matrix_json(k.matrix());
  return j;
}

StochasticKernel kernel_from(const json& j, const std::string& path, const std::optional<StateSpace>& outer) {
  const auto& rows = field(j, "matrix", path);
  const std::string mpath = path + "/matrix";
  if (!rows.is_array() || rows.empty()) throw ConfigError(mpath, "expected a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    const std::string rpath = mpath + "/" + std::to_string(i);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw ConfigError(rpath, "expected a row of length " + std::to_string(n));
    }
    for (Eigen::Index c = 0; c < n; ++c) m(i, c) = number(row[static_cast<std::size_t>(c)], rpath + "/" + std::to_string(c));
  }
  auto space = space_from(j, path);
  if (!space) space = outer;
  try {
    return space ? StochasticKernel(*space, std::move(m)) : StochasticKernel(std::move(m));
  } catch (const Error& e) {
    throw ConfigError(mpath, e.what());
  }
}

KernelSet kernels_from(const json& j, const std::string& path) {
  const auto outer = space_from(j, path);
  const auto& arr = field(j, "kernels", path);
  if (!arr.is_array() || arr.empty()) throw ConfigError(path + "/kernels", "expected a non-empty array");
  KernelSet out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(kernel_from(arr[i], path + "/kernels/" + std::to_string(i), outer));
  if (!outer) {
    // Without an explicit space all kernels share the default labels of the first.
    for (auto& k : out) {
      if (k.size() != out.front().size()) throw ConfigError(path + "/kernels", "kernels have different sizes");
      k = StochasticKernel(out.front().space(), k.matrix());
    }
  }
  return out;
}

}  // namespace

std::string to_json(const StochasticKernel& k) { return kernel_json(k, true).dump(2); }

std::string to_json(const ProbMeasure& mu) {
  json j{{"space", space_json(mu.space())}, {"weights", std::vector<double>(mu.weights().begin(), mu.weights().end())}};
  return j.dump(2);
}

std::string to_json(const KernelSet& kernels) {
  if (kernels.empty()) throw InvalidArgument("to_json: empty kernel set");
  json j{{"space", space_json(kernels.front().space())}, {"kernels", json::array()}};
  for (const auto& k : kernels) j["kernels"].push_back(kernel_json(k, false));
  return j.dump(2);
}

std::string to_json(const KernelSequence& seq) {
  if (seq.kind() == KernelSequence::Kind::generated) throw InvalidArgument("to_json: generated sequences have no JSON form");
  json j = json::parse(to_json(seq.kernels()));
  switch (seq.kind()) {
    case KernelSequence::Kind::explicit_list:
      j["kind"] = "explicit";
      break;
    case KernelSequence::Kind::cyclic:
      j["kind"] = "cyclic";
      j["word"] = seq.word();
      break;
    case KernelSequence::Kind::iid:
      j["kind"] = "iid";
      j["probs"] = seq.probs();
      j["seed"] = seq.seed();
      break;
    case KernelSequence::Kind::generated:
      break;
  }
  return j.dump(2);
}

std::string to_json(const WeightedGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back(e.loop() ? json::array({e.x}) : json::array({e.x, e.y}));
  json j{{"space", space_json(g.space())}, {"edges", std::move(edges)}, {"weights", g.weights()}};
  return j.dump(2);
}

StochasticKernel kernel_from_json(const std::string& text) { return kernel_from(parse(text), "", std::nullopt); }

ProbMeasure measure_from_json(const std::string& text) {
  const json j = parse(text);
  const auto& w = field(j, "weights", "");
  if (!w.is_array() || w.empty()) throw ConfigError("/weights", "expected a non-empty array");
  Vector v(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(w[i], "/weights/" + std::to_string(i));
  const auto space = space_from(j, "");
  try {
    return space ? ProbMeasure(*space, std::move(v)) : ProbMeasure(std::move(v));
  } catch (const Error& e) {
    throw ConfigError("/weights", e.what());
  }
}

KernelSet kernel_set_from_json(const std::string& text) { return kernels_from(parse(text), ""); }

KernelSequence sequence_from_json(const std::string& text) {
  const json j = parse(text);
  const auto& kind_j = field(j, "kind", "");
  if (!kind_j.is_string()) throw ConfigError("/kind", "expected a string");
  const auto kind = kind_j.get<std::string>();
  auto kernels = kernels_from(j, "");
  try {
    if (kind == "explicit") return KernelSequence::explicit_list(std::move(kernels));
    if (kind == "cyclic") {
      const auto& w = field(j, "word", "");
      if (!w.is_array()) throw ConfigError("/word", "expected an array");
      std::vector<std::size_t> word;
      for (std::size_t i = 0; i < w.size(); ++i) word.push_back(index(w[i], "/word/" + std::to_string(i)));
      return KernelSequence::cyclic(std::move(kernels), std::move(word));
    }
    if (kind == "iid") {
      const auto& p = field(j, "probs", "");
      if (!p.is_array()) throw ConfigError("/probs", "expected an array");
      std::vector<double> probs;
      for (std::size_t i = 0; i < p.size(); ++i) probs.push_back(number(p[i], "/probs/" + std::to_string(i)));
      const auto& s = field(j, "seed", "");
      if (!s.is_number_unsigned()) throw ConfigError("/seed", "expected an unsigned integer");
      return KernelSequence::iid(std::move(kernels), std::move(probs), s.get<std::uint64_t>());
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("", e.what());
  }
  throw ConfigError("/kind", "unknown sequence kind '" + kind + "' (expected cyclic, explicit or iid)");
}

WeightedGraph graph_from_json(const std::string& text) {
  const json j = parse(text);
  const auto& e = field(j, "edges", "");
  if (!e.is_array() || e.empty()) throw ConfigError("/edges", "expected a non-empty array");
  std::vector<Edge> edges;
  std::size_t top = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::string p = "/edges/" + std::to_string(i);
    if (!e[i].is_array() || e[i].empty() || e[i].size() > 2) throw ConfigError(p, "expected [x, y] or [x]");
    Edge edge;
    edge.x = index(e[i][0], p + "/0");
    edge.y = e[i].size() == 2 ? index(e[i][1], p + "/1") : edge.x;
    top = std::max({top, edge.x, edge.y});
    edges.push_back(edge);
  }
  if (j.contains("weights")) {
    const auto& w = j["weights"];
    if (!w.is_array() || w.size() != edges.size()) throw ConfigError("/weights", "expected one weight per edge");
    for (std::size_t i = 0; i < w.size(); ++i) edges[i].weight = number(w[i], "/weights/" + std::to_string(i));
  }
  auto space = space_from(j, "");
  if (!space) space = StateSpace(top + 1);
  try {
    return WeightedGraph(*space, std::move(edges));
  } catch (const Error& ex) {
    throw ConfigError("/edges", ex.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace mclab
