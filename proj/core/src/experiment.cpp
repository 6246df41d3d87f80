#include "mclab/experiment.hpp"

#include "format.hpp"
#include "mclab/chain.hpp"
#include "mclab/error.hpp"
#include "mclab/io.hpp"
#include "mclab/merging.hpp"
#include "mclab/rng.hpp"
#include "mclab/singular_bounds.hpp"
#include "mclab/spectral.hpp"
#include "mclab/stability.hpp"
#include "mclab/zoo.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <iomanip>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#ifndef MCLAB_VERSION
#define MCLAB_VERSION "0.0.0"
#endif

namespace mclab {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::set<std::string> kAnalyses{"merging", "bounds", "comparison", "metropolis", "stability", "spectral"};
const std::set<std::string> kSequenceFamilies{"constant_rate_random", "constant_rate_bd", "mirrored_pair", "pb0",
                                              "stick_pair",           "stick_pair_random", "lazy_stick_weights",
                                              "metropolis_weights",   "two_point",         "five_point",
                                              "seven_point"};
const std::set<std::string> kGraphFamilies{"lazy_stick", "random_regular", "complete_graph"};

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

std::size_t size_param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  const double v = param(p, key, fallback);
  if (!(v >= 0.0) || v != std::floor(v)) throw ConfigError("params/" + key, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

// ---------------------------------------------------------------- family construction

WeightedGraph make_graph(const std::string& family, const std::map<std::string, double>& p, std::uint64_t key) {
  if (family == "lazy_stick") return lazy_stick(size_param(p, "N", 8));
  if (family == "random_regular") {
    return random_regular_graph(size_param(p, "n", param(p, "N", 16)), size_param(p, "d", 3), key, param(p, "loops", 0.0) != 0.0);
  }
  if (family == "complete_graph") return complete_graph_with_loops(size_param(p, "n", param(p, "N", 5)));
  throw ConfigError("family", "'" + family + "' is not a graph family");
}

// Target measure delta(x) exp(u_x), u_x uniform in [-tilt, tilt].
ProbMeasure tilted_target(const WeightedGraph& g, double tilt, std::uint64_t key) {
  CounterRng rng(key);
  Vector w = g.degree_measure().weights();
  for (Eigen::Index x = 0; x < w.size(); ++x) w(x) *= std::exp(rng.uniform(-tilt, tilt));
  return ProbMeasure(g.space(), w / w.sum());
}

KernelSequence make_sequence(const std::string& family, const std::map<std::string, double>& p, std::uint64_t key) {
  if (family == "constant_rate_random") {
    return random_constant_rate_sequence(size_param(p, "N", 16), param(p, "a", 1.2), param(p, "A", 2.0), key,
                                         param(p, "r_max", 1.0 / 3.0));
  }
  if (family == "constant_rate_bd") {
    const auto k = constant_rate_bd(size_param(p, "N", 16), param(p, "p", 1.0 / 3), param(p, "q", 1.0 / 3), param(p, "r", 1.0 / 3));
    return KernelSequence::cyclic({k}, {0});
  }
  if (family == "mirrored_pair") {
    return mirrored_pair_sequence(size_param(p, "N", 16), param(p, "p", 0.5), param(p, "q", 0.25), param(p, "r", 0.25));
  }
  if (family == "pb0") return random_pb0_sequence(size_param(p, "N", 16), key);
  if (family == "stick_pair" || family == "stick_pair_random") {
    double pp = param(p, "p", 0.6), r = param(p, "r", 0.0), e1 = param(p, "eta1", 0.0), e2 = param(p, "eta2", 0.0);
    if (family == "stick_pair_random") {
      CounterRng rng(key);
      pp = rng.uniform(0.55, 0.75);
      r = rng.uniform(0.0, 0.2);
      e1 = rng.uniform(0.0, 0.5);
      e2 = rng.uniform(0.0, 0.5);
      pp *= 1.0 - r;
    }
    const auto pair = perturbed_stick_pair(size_param(p, "N", 5), pp, 1.0 - pp - r, r, e1, e2);
    return KernelSequence::cyclic({pair.q1, pair.q2}, {0, 1});
  }
  if (family == "lazy_stick_weights") {
    const auto g = lazy_stick(size_param(p, "N", 8));
    const double b = param(p, "b", 2.0);
    return KernelSequence::generated(g.space(), [g, b, key](std::int64_t i) {
      return graph_kernel(random_weights(g, b, CounterRng::derive(key, static_cast<std::uint64_t>(i)))).kernel;
    });
  }
  if (family == "metropolis_weights") {
    const auto g = lazy_stick(size_param(p, "N", 8));
    const double b = param(p, "b", 2.0);
    const auto target = tilted_target(g, param(p, "tilt", 0.5), CounterRng::derive(key, 0));
    return KernelSequence::generated(g.space(), [g, b, key, target](std::int64_t i) {
      const auto v = random_weights(g, b, CounterRng::derive(key, 1, static_cast<std::uint64_t>(i)));
      return graph_kernel(metropolis_reweight(v, target).graph).kernel;
    });
  }
  if (family == "two_point") return alternating(two_point(param(p, "a", 0.5), param(p, "b", 0.5)));
  if (family == "five_point") return alternating(five_point());
  if (family == "seven_point") return alternating(seven_point());
  throw ConfigError("family", "'" + family + "' is not a sequence family");
}

// ---------------------------------------------------------------- analyses

struct Outcome {
  std::vector<double> values;
  std::vector<std::string> violations;
};

const std::vector<std::string>& analysis_columns(const std::string& analysis) {
  static const std::map<std::string, std::vector<std::string>> columns{
      {"merging", {"time", "time_over_N", "time_over_N2", "time_times_gap_over_log"}},
      {"bounds", {"violations", "min_tv_gap", "min_relsup_gap", "sigma_product"}},
      {"comparison", {"sigma_srw", "sigma_w", "gap_lower", "gap_w", "cvth1_violations", "certified", "n_max"}},
      {"metropolis", {"a", "b", "weight_ratio", "ratio_bound", "residual"}},
      {"stability", {"c_estimate", "log_c", "nodes"}},
      {"spectral", {"sigma", "gap", "gap_times_N2"}},
  };
  return columns.at(analysis);
}

const char* primary_column(const std::string& analysis) {
  if (analysis == "merging") return "time";
  if (analysis == "bounds") return "violations";
  if (analysis == "comparison") return "gap_w";
  if (analysis == "metropolis") return "residual";
  if (analysis == "stability") return "c_estimate";
  return "gap";
}

Outcome run_one(const Scenario& s, const std::string& family, const std::map<std::string, double>& p, std::uint64_t key,
                const RunOptions& options) {
  Outcome out;
  const std::string& a = s.analysis;
  if (a == "merging") {
    const auto seq = make_sequence(family, p, key);
    MergingOptions mo;
    mo.stop_when_reached = true;
    mo.with_bounds = false;
    const auto rep = merging_time(seq, s.epsilon, parse_metric(s.metric), s.n_max, mo);
    const double t = rep.time() ? static_cast<double>(*rep.time()) : kInf;
    const double N = static_cast<double>(seq.size() - 1);
    double scaled = kNaN;
    if (family == "lazy_stick_weights" || family == "metropolis_weights") {
      // n (1 - sigma_N) / (log |V| + log+ 1/eps) for the unweighted stick.
      const double gap = srw_spectrum(lazy_stick(seq.size() - 1)).gap;
      scaled = t * gap / (std::log(static_cast<double>(seq.size())) + std::max(0.0, std::log(1.0 / s.epsilon)));
    }
    out.values = {t, t / N, t / (N * N), scaled};
  } else if (a == "bounds") {
    const auto seq = make_sequence(family, p, key);
    CounterRng rng(CounterRng::derive(key, 0xb0));
    Vector w(static_cast<Eigen::Index>(seq.size()));
    if (param(p, "random_mu0", 1.0) != 0.0) {
      for (Eigen::Index x = 0; x < w.size(); ++x) w(x) = rng.uniform(0.5, 1.5);
    } else {
      w.setOnes();
    }
    const auto rep = thsing_bounds(seq, ProbMeasure(seq.space(), w / w.sum()), static_cast<std::int64_t>(size_param(p, "horizon", 200)));
    const double tv_gap = *std::min_element(rep.min_tv_gap.begin(), rep.min_tv_gap.end());
    const double rs_gap = *std::min_element(rep.min_relsup_gap.begin(), rep.min_relsup_gap.end());
    out.values = {static_cast<double>(rep.violations), tv_gap, rs_gap, rep.sigma_product.back()};
    if (rep.violations > 0) out.violations.push_back(std::to_string(rep.violations) + " singular-value bound violations");
  } else if (a == "comparison") {
    const auto g = make_graph(family, p, CounterRng::derive(key, 0x9a));
    const double b = param(p, "b", 2.0);
    const auto w = random_weights(g, b, CounterRng::derive(key, 0x77));
    ComparisonOptions co;
    co.n_max = static_cast<std::int64_t>(param(p, "horizon", 0.0));
    const auto rep = comparison_check(w, b, co);
    out.values = {rep.sigma_srw, rep.sigma_w, rep.gap_lower, rep.gap_w, static_cast<double>(rep.violations),
                  rep.certified ? 1.0 : 0.0, static_cast<double>(rep.n_max)};
    if (!rep.gap_holds) out.violations.push_back("gap inequality fails: 1 - sigma(w) = " + detail::fmt(rep.gap_w) + " < " + detail::fmt(rep.gap_lower));
    if (rep.violations > 0) out.violations.push_back(std::to_string(rep.violations) + " convergence bound violations");
  } else if (a == "metropolis") {
    const auto g = make_graph(family, p, CounterRng::derive(key, 0x9a));
    const auto v = random_weights(g, param(p, "b", 2.0), CounterRng::derive(key, 0x77));
    const auto target = tilted_target(g, param(p, "tilt", 0.5), CounterRng::derive(key, 0x55));
    const auto rep = metropolis_reweight(v, target);
    const double ratio = rep.graph.weight_ratio();
    out.values = {rep.a, rep.b, ratio, rep.ratio_bound, rep.residual};
    if (rep.residual > 1e-12) out.violations.push_back("pi(w) misses the target by " + detail::fmt(rep.residual));
    if (ratio > rep.ratio_bound * (1.0 + 1e-12)) out.violations.push_back("R(w) = " + detail::fmt(ratio) + " exceeds a^2(b^3+bD) = " + detail::fmt(rep.ratio_bound));
  } else if (a == "stability") {
    const auto seq = make_sequence(family, p, key);
    if (seq.kind() != KernelSequence::Kind::cyclic) throw ConfigError("family", "stability needs a finite kernel set (cyclic family)");
    const auto u = ProbMeasure::uniform(seq.space());
    EnvelopeOptions eo;
    eo.budget_nodes = options.budget_nodes;
    const auto rep = ratio_envelope(seq.kernels(), u, u, size_param(p, "depth", 10), eo);
    out.values = {rep.c_estimate, std::log(rep.c_estimate), static_cast<double>(rep.nodes_visited)};
  } else {
    const auto g = make_graph(family, p, CounterRng::derive(key, 0x9a));
    const auto rep = srw_spectrum(g);
    const double N = static_cast<double>(g.size() - 1);
    out.values = {rep.sigma, rep.gap, rep.gap * N * N};
  }
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

json number_json(double v) { return std::isfinite(v) ? json(v) : json(detail::fmt(v)); }

double number_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return std::stod(j.get<std::string>());
  return kNaN;
}

// ---------------------------------------------------------------- parsing helpers

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string string_field(const json& j, const char* key, const std::string& fallback, bool required = false) {
  const json* v = find(j, key);
  if (!v) {
    if (required) throw ConfigError(std::string("/") + key, "missing field");
    return fallback;
  }
  if (!v->is_string()) throw ConfigError(std::string("/") + key, "expected a string");
  return v->get<std::string>();
}

double number_field(const json& j, const char* key, double fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number()) throw ConfigError(std::string("/") + key, "expected a number");
  return v->get<double>();
}

}  // namespace

const char* version() noexcept { return MCLAB_VERSION; }

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) throw Error("SHA-256 computation failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("", "scenario must be a JSON object");
  static const std::set<std::string> known{"name", "analysis", "family", "grid", "params", "runs", "seed", "metric",
                                           "epsilon", "n_max", "mode", "ratio_check", "output", "description"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigError("/" + key, "unknown field");
  }

  Scenario s;
  s.source = text;
  s.name = string_field(j, "name", "", true);
  s.analysis = string_field(j, "analysis", "", true);
  if (!kAnalyses.count(s.analysis)) throw ConfigError("/analysis", "unknown analysis '" + s.analysis + "'");

  const json* fam = find(j, "family");
  if (!fam) throw ConfigError("/family", "missing field");
  if (fam->is_string()) {
    s.families.push_back(fam->get<std::string>());
  } else if (fam->is_array() && !fam->empty()) {
    for (std::size_t i = 0; i < fam->size(); ++i) {
      if (!(*fam)[i].is_string()) throw ConfigError("/family/" + std::to_string(i), "expected a string");
      s.families.push_back((*fam)[i].get<std::string>());
    }
  } else {
    throw ConfigError("/family", "expected a string or a non-empty array of strings");
  }
  const bool graph_analysis = s.analysis == "comparison" || s.analysis == "metropolis" || s.analysis == "spectral";
  for (std::size_t i = 0; i < s.families.size(); ++i) {
    const auto& f = s.families[i];
    const bool ok = graph_analysis ? kGraphFamilies.count(f) > 0 : kSequenceFamilies.count(f) > 0;
    if (!ok) throw ConfigError("/family", "family '" + f + "' does not fit analysis '" + s.analysis + "'");
  }

  if (const json* g = find(j, "grid")) {
    if (!g->is_object()) throw ConfigError("/grid", "expected an object of arrays");
    for (const auto& [axis, values] : g->items()) {
      if (!values.is_array() || values.empty()) throw ConfigError("/grid/" + axis, "expected a non-empty array of numbers");
      std::vector<double> v;
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (!values[i].is_number()) throw ConfigError("/grid/" + axis + "/" + std::to_string(i), "expected a number");
        v.push_back(values[i].get<double>());
      }
      s.grid.emplace_back(axis, std::move(v));
    }
  }
  if (const json* p = find(j, "params")) {
    if (!p->is_object()) throw ConfigError("/params", "expected an object of numbers");
    for (const auto& [key, value] : p->items()) {
      if (!value.is_number()) throw ConfigError("/params/" + key, "expected a number");
      s.params[key] = value.get<double>();
    }
  }
  if (const json* r = find(j, "runs")) {
    if (!r->is_number_unsigned() || r->get<std::size_t>() == 0) throw ConfigError("/runs", "expected a positive integer");
    s.runs = r->get<std::size_t>();
  }
  if (const json* seed = find(j, "seed")) {
    if (!seed->is_number_unsigned()) throw ConfigError("/seed", "expected an unsigned 64-bit integer");
    s.seed = seed->get<std::uint64_t>();
  }
  s.metric = string_field(j, "metric", "tv");
  if (s.metric != "tv" && s.metric != "relsup") throw ConfigError("/metric", "expected tv or relsup");
  s.epsilon = number_field(j, "epsilon", 0.25);
  if (!(s.epsilon > 0.0) || (s.metric == "tv" && !(s.epsilon < 1.0))) throw ConfigError("/epsilon", "out of range for the metric");
  const double n_max = number_field(j, "n_max", 1000);
  if (!(n_max >= 1) || n_max != std::floor(n_max)) throw ConfigError("/n_max", "expected a positive integer");
  s.n_max = static_cast<std::int64_t>(n_max);
  const auto mode = string_field(j, "mode", "assert");
  if (mode != "assert" && mode != "report") throw ConfigError("/mode", "expected assert or report");
  s.report_only = mode == "report";
  if (const json* rc = find(j, "ratio_check")) {
    if (!rc->is_object()) throw ConfigError("/ratio_check", "expected an object");
    RatioCheck check;
    const json* col = find(*rc, "column");
    if (!col || !col->is_string()) throw ConfigError("/ratio_check/column", "expected a string");
    check.column = col->get<std::string>();
    const auto& cols = analysis_columns(s.analysis);
    if (std::find(cols.begin(), cols.end(), check.column) == cols.end()) throw ConfigError("/ratio_check/column", "not a column of this analysis");
    const json* lo = find(*rc, "min");
    const json* hi = find(*rc, "max");
    check.min = lo && lo->is_number() ? lo->get<double>() : 0.0;
    check.max = hi && hi->is_number() ? hi->get<double>() : kInf;
    if (check.min > check.max) throw ConfigError("/ratio_check", "min exceeds max");
    s.ratio_check = check;
  }
  if (const json* o = find(j, "output")) {
    if (!o->is_object()) throw ConfigError("/output", "expected an object");
    for (const auto& [key, value] : o->items()) {
      if (key != "csv" && key != "json" && key != "plotdata") throw ConfigError("/output/" + key, "expected csv, json or plotdata");
      if (!value.is_string()) throw ConfigError("/output/" + key, "expected a path");
      s.outputs[key] = value.get<std::string>();
    }
  }
  return s;
}

ResultSet run_scenario(const Scenario& s, const RunOptions& options) {
  const std::uint64_t seed = options.seed.value_or(s.seed);

  // Grid points: family (outermost), then the declared axes with the last one fastest.
  struct Point {
    std::string family;
    std::size_t family_index;
    std::map<std::string, double> params;
    std::vector<double> coords;
    std::string label;
  };
  std::vector<Point> points;
  for (std::size_t f = 0; f < s.families.size(); ++f) {
    std::vector<std::size_t> idx(s.grid.size(), 0);
    while (true) {
      Point pt{s.families[f], f, s.params, {}, {}};
      std::ostringstream label;
      if (s.families.size() > 1) label << "family=" << s.families[f];
      for (std::size_t a = 0; a < s.grid.size(); ++a) {
        const double v = s.grid[a].second[idx[a]];
        pt.params[s.grid[a].first] = v;
        pt.coords.push_back(v);
        if (label.tellp() > 0) label << ',';
        label << s.grid[a].first << '=' << detail::fmt(v);
      }
      pt.label = label.str();
      points.push_back(std::move(pt));
      std::size_t a = s.grid.size();
      while (a > 0 && ++idx[a - 1] == s.grid[a - 1].second.size()) idx[--a] = 0;
      if (a == 0) break;
    }
  }

  ResultSet result;
  result.scenario = s.name;
  result.hash = sha256_hex(s.source);
  result.version = version();
  result.columns = {"grid_index", "run"};
  if (s.families.size() > 1) result.columns.push_back("family");
  for (const auto& axis : s.grid) result.columns.push_back(axis.first);
  const auto& acols = analysis_columns(s.analysis);
  result.columns.insert(result.columns.end(), acols.begin(), acols.end());

  const std::size_t tasks = points.size() * s.runs;
  std::vector<Outcome> outcomes(tasks);
  std::vector<std::exception_ptr> errors(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      const std::size_t gi = t / s.runs;
      const std::size_t run = t % s.runs;
      try {
        outcomes[t] = run_one(s, points[gi].family, points[gi].params, CounterRng::derive(seed, gi, run), options);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(std::max<std::size_t>(tasks, 1))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<std::string> notes;
  for (std::size_t t = 0; t < tasks; ++t) {
    const std::size_t gi = t / s.runs;
    const std::size_t run = t % s.runs;
    std::vector<double> row{static_cast<double>(gi), static_cast<double>(run)};
    if (s.families.size() > 1) row.push_back(static_cast<double>(points[gi].family_index));
    row.insert(row.end(), points[gi].coords.begin(), points[gi].coords.end());
    row.insert(row.end(), outcomes[t].values.begin(), outcomes[t].values.end());
    result.rows.push_back(std::move(row));
    for (const auto& v : outcomes[t].violations) {
      notes.push_back("grid " + std::to_string(gi) + (points[gi].label.empty() ? "" : " (" + points[gi].label + ")") +
                      ", run " + std::to_string(run) + ": " + v);
    }
  }

  // Summary: medians of the primary (and checked) column per grid point.
  const std::size_t offset = result.columns.size() - acols.size();
  auto column_index = [&](const std::string& name) {
    return offset + static_cast<std::size_t>(std::find(acols.begin(), acols.end(), name) - acols.begin());
  };
  std::set<std::string> stats{primary_column(s.analysis)};
  if (s.ratio_check) stats.insert(s.ratio_check->column);
  std::map<std::string, std::vector<double>> medians;
  for (const auto& stat : stats) {
    const std::size_t c = column_index(stat);
    for (std::size_t gi = 0; gi < points.size(); ++gi) {
      std::vector<double> vals;
      for (std::size_t run = 0; run < s.runs; ++run) vals.push_back(result.rows[gi * s.runs + run][c]);
      const double m = median(vals);
      medians[stat].push_back(m);
      result.summary["median(" + stat + ")" + (points[gi].label.empty() ? "" : "[" + points[gi].label + "]")] = m;
      if (s.runs > 1) {
        result.summary["max(" + stat + ")" + (points[gi].label.empty() ? "" : "[" + points[gi].label + "]")] =
            *std::max_element(vals.begin(), vals.end());
      }
    }
  }
  for (const auto& stat : stats) {
    std::vector<std::pair<double, double>> xy;
    for (std::size_t gi = 0; gi < points.size(); ++gi) {
      const double x = points[gi].coords.empty() ? static_cast<double>(gi) : points[gi].coords.front();
      xy.emplace_back(x, medians[stat][gi]);
    }
    result.series.emplace_back("median(" + stat + ")", std::move(xy));
  }
  if (s.ratio_check) {
    const auto& m = medians[s.ratio_check->column];
    for (std::size_t gi = 1; gi < points.size(); ++gi) {
      if (points[gi].family_index != points[gi - 1].family_index) continue;
      const double ratio = m[gi] / m[gi - 1];
      const std::string key = "ratio(" + s.ratio_check->column + ")[" + points[gi].label + " / " + points[gi - 1].label + "]";
      result.summary[key] = ratio;
      if (!(ratio >= s.ratio_check->min && ratio <= s.ratio_check->max)) {
        notes.push_back(key + " = " + detail::fmt(ratio) + " outside [" + detail::fmt(s.ratio_check->min) + ", " +
                        detail::fmt(s.ratio_check->max) + "]");
      }
    }
  }
  result.summary["violation_count"] = s.report_only ? 0.0 : static_cast<double>(notes.size());
  if (!s.report_only) result.violations = std::move(notes);
  return result;
}

ResultSet run_scenario(const std::string& path_or_builtin, const RunOptions& options) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(path_or_builtin, ec)) return run_scenario(parse_scenario(read_text_file(path_or_builtin)), options);
  return run_scenario(parse_scenario(builtin_scenario_text(path_or_builtin)), options);
}

EmitFormat parse_emit_format(const std::string& name) {
  if (name == "csv") return EmitFormat::csv;
  if (name == "json") return EmitFormat::json;
  if (name == "plotdata") return EmitFormat::plotdata;
  throw InvalidArgument("unknown output format '" + name + "' (expected csv, json or plotdata)");
}

std::string render(const ResultSet& r, EmitFormat format) {
  std::ostringstream out;
  switch (format) {
    case EmitFormat::csv: {
      out << "# mclab " << r.version << " scenario=" << r.scenario << " sha256=" << r.hash << " generated=" << timestamp() << '\n';
      for (std::size_t c = 0; c < r.columns.size(); ++c) out << (c ? "," : "") << r.columns[c];
      out << '\n';
      for (const auto& row : r.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << detail::fmt(row[c]);
        out << '\n';
      }
      break;
    }
    case EmitFormat::json: {
      json j;
      j["scenario"] = r.scenario;
      j["sha256"] = r.hash;
      j["version"] = r.version;
      j["columns"] = r.columns;
      j["rows"] = json::array();
      for (const auto& row : r.rows) {
        json jr = json::array();
        for (double v : row) jr.push_back(number_json(v));
        j["rows"].push_back(std::move(jr));
      }
      j["summary"] = json::object();
      for (const auto& [k, v] : r.summary) j["summary"][k] = number_json(v);
      j["violations"] = r.violations;
      j["series"] = json::array();
      for (const auto& [label, xy] : r.series) {
        json pts = json::array();
        for (const auto& [x, y] : xy) pts.push_back(json::array({number_json(x), number_json(y)}));
        j["series"].push_back(json{{"label", label}, {"points", std::move(pts)}});
      }
      out << j.dump(2) << '\n';
      break;
    }
    case EmitFormat::plotdata: {
      bool first = true;
      for (const auto& [label, xy] : r.series) {
        if (!first) out << "\n\n";
        first = false;
        out << "# " << label << '\n';
        for (const auto& [x, y] : xy) out << detail::fmt(x) << ' ' << detail::fmt(y) << '\n';
      }
      break;
    }
  }
  return out.str();
}

void emit(const ResultSet& result, EmitFormat format, const std::filesystem::path& path) { write_text_file(path, render(result, format)); }

ResultSet parse_result_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  ResultSet r;
  try {
    r.scenario = j.at("scenario").get<std::string>();
    r.hash = j.at("sha256").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& row : j.at("rows")) {
      std::vector<double> v;
      for (const auto& x : row) v.push_back(number_from(x));
      r.rows.push_back(std::move(v));
    }
    for (const auto& [k, v] : j.at("summary").items()) r.summary[k] = number_from(v);
    r.violations = j.at("violations").get<std::vector<std::string>>();
    for (const auto& s : j.at("series")) {
      std::vector<std::pair<double, double>> xy;
      for (const auto& p : s.at("points")) xy.emplace_back(number_from(p.at(0)), number_from(p.at(1)));
      r.series.emplace_back(s.at("label").get<std::string>(), std::move(xy));
    }
  } catch (const json::exception& e) {
    throw ConfigError("", std::string("malformed result document: ") + e.what());
  }
  return r;
}

}  // namespace mclab
