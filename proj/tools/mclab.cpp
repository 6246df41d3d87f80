#include "mclab/chain.hpp"
#include "mclab/error.hpp"
#include "mclab/experiment.hpp"
#include "mclab/io.hpp"
#include "mclab/merging.hpp"
#include "mclab/singular_bounds.hpp"
#include "mclab/spectral.hpp"
#include "mclab/stability.hpp"
#include "mclab/zoo.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

namespace {

using namespace mclab;

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  unsigned threads = 1;
  std::size_t budget_nodes = kDefaultBudgetNodes;
};

void write_output(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(g.out, text);
  }
}

// A sequence file, a bare kernel set (cycled in order) or a single kernel (homogeneous).
KernelSequence load_sequence(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw ConfigError(path, "not a JSON object");
  if (doc.contains("kind")) return sequence_from_json(text);
  if (doc.contains("kernels")) {
    auto set = kernel_set_from_json(text);
    std::vector<std::size_t> word(set.size());
    for (std::size_t i = 0; i < word.size(); ++i) word[i] = i;
    return KernelSequence::cyclic(std::move(set), std::move(word));
  }
  return KernelSequence::cyclic({kernel_from_json(text)}, {0});
}

KernelSet load_kernel_set(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto doc = nlohmann::json::parse(text, nullptr, false);
  if (!doc.is_discarded() && doc.is_object() && doc.contains("matrix")) return {kernel_from_json(text)};
  return kernel_set_from_json(text);
}

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> params;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidArgument("parameter '" + item + "' is not of the form key=value");
    try {
      params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw InvalidArgument("parameter '" + item + "' has a non-numeric value");
    }
  }
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mclab: numerical lab for time-inhomogeneous finite Markov chains"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Master seed for random families and searches");
  app.add_option("--out", g.out, "Write the primary output to this file instead of stdout");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--budget-nodes", g.budget_nodes, "Node budget for exhaustive word-tree enumeration")->check(CLI::PositiveNumber);

  int status = 0;

  // zoo
  auto* zoo = app.add_subcommand("zoo", "Model catalog");
  zoo->require_subcommand(1);
  zoo->fallthrough();
  auto* zoo_list = zoo->add_subcommand("list", "List catalog entries");
  zoo_list->callback([&] {
    std::ostringstream out;
    for (const auto& e : zoo_catalog()) out << e.name << "\t" << e.description << '\n';
    write_output(g, out.str());
  });
  std::string zoo_name;
  std::vector<std::string> zoo_params;
  auto* zoo_emit_cmd = zoo->add_subcommand("emit", "Emit a catalog entry as JSON");
  zoo_emit_cmd->add_option("name", zoo_name, "Catalog entry")->required();
  zoo_emit_cmd->add_option("-p,--param", zoo_params, "Parameter key=value (repeatable)");
  zoo_emit_cmd->callback([&] { write_output(g, zoo_emit(zoo_name, parse_params(zoo_params), g.seed)); });

  // merge
  std::string merge_input, merge_metric = "tv", merge_format = "csv";
  double merge_eps = 0.25;
  std::int64_t merge_nmax = 1000, merge_block = 1;
  bool merge_stop = false;
  auto* merge = app.add_subcommand("merge", "Merging trajectories, merging time and Doeblin/block bounds");
  merge->add_option("sequence", merge_input, "Sequence, kernel-set or kernel JSON")->required()->check(CLI::ExistingFile);
  merge->add_option("--epsilon", merge_eps, "Merging threshold")->check(CLI::PositiveNumber);
  merge->add_option("--metric", merge_metric, "tv or relsup")->check(CLI::IsMember({"tv", "relsup"}));
  merge->add_option("--n-max", merge_nmax, "Horizon")->check(CLI::PositiveNumber);
  merge->add_option("--block", merge_block, "Block length for the block-contraction bound")->check(CLI::PositiveNumber);
  merge->add_flag("--stop", merge_stop, "Stop once the threshold is reached");
  merge->add_option("--format", merge_format, "csv, json or plotdata")->check(CLI::IsMember({"csv", "json", "plotdata"}));
  merge->callback([&] {
    MergingOptions opts;
    opts.stop_when_reached = merge_stop;
    opts.block = merge_block;
    const auto rep = merging_time(load_sequence(merge_input), merge_eps, parse_metric(merge_metric), merge_nmax, opts);
    write_output(g, merge_format == "csv" ? rep.csv() : merge_format == "json" ? rep.json() : rep.plotdata());
    if (!rep.time()) std::cerr << "merging threshold not reached within " << merge_nmax << " steps\n";
  });

  // bound
  std::string bound_input, bound_mu0;
  std::int64_t bound_n = 100;
  bool bound_homogeneous = false;
  auto* bound = app.add_subcommand("bound", "Singular-value bounds against exact distances");
  bound->add_option("sequence", bound_input, "Sequence, kernel-set or kernel JSON")->required()->check(CLI::ExistingFile);
  bound->add_option("--mu0", bound_mu0, "Initial measure JSON (default uniform)")->check(CLI::ExistingFile);
  bound->add_option("--horizon", bound_n, "Number of steps")->check(CLI::PositiveNumber);
  bound->add_flag("--homogeneous", bound_homogeneous, "Homogeneous bounds for a single kernel");
  bound->callback([&] {
    const auto seq = load_sequence(bound_input);
    const auto mu0 = bound_mu0.empty() ? ProbMeasure::uniform(seq.space()) : measure_from_json(read_text_file(bound_mu0));
    std::size_t violations = 0;
    if (bound_homogeneous) {
      if (seq.kind() != KernelSequence::Kind::cyclic || seq.kernels().size() != 1) {
        throw InvalidArgument("--homogeneous needs a single kernel");
      }
      const auto rep = homogeneous_bounds(seq.kernels().front(), mu0, bound_n);
      std::ostringstream out;
      out << "n,quant_exact,quant_bound,hom1_exact,hom1_bound,hom2_exact,hom2_bound\n";
      for (std::size_t i = 0; i < rep.quant_exact.size(); ++i) {
        out << i << ',' << rep.quant_exact[i] << ',' << rep.quant_bound[i] << ',' << rep.hom1_exact[i] << ','
            << rep.hom1_bound[i] << ',' << rep.hom2_exact[i] << ',' << rep.hom2_bound[i] << '\n';
      }
      write_output(g, out.str());
      violations = rep.violations;
    } else {
      const auto rep = thsing_bounds(seq, mu0, bound_n);
      write_output(g, rep.csv());
      violations = rep.violations;
    }
    if (violations > 0) {
      std::cerr << violations << " bound violations\n";
      status = 1;
    }
  });

  // stability
  std::string stab_input, stab_pi, stab_mu0;
  std::size_t stab_depth = 8, stab_samples = 0;
  double stab_criterion = 0.0;
  bool stab_search = false, stab_two_point = false;
  auto* stab = app.add_subcommand("stability", "Ratio envelopes, criterion checks and stable-measure search");
  stab->add_option("kernels", stab_input, "Kernel-set JSON")->required()->check(CLI::ExistingFile);
  stab->add_option("--pi", stab_pi, "Candidate measure JSON (default uniform)")->check(CLI::ExistingFile);
  stab->add_option("--mu0", stab_mu0, "Initial measure JSON (default: the candidate)")->check(CLI::ExistingFile);
  stab->add_option("--depth", stab_depth, "Word length");
  stab->add_option("--samples", stab_samples, "Sample this many random words instead of enumerating");
  stab->add_option("--criterion", stab_criterion, "Also run the product-invariant criterion with constant c");
  stab->add_flag("--search", stab_search, "Search for an initial measure with a small envelope");
  stab->add_flag("--two-point", stab_two_point, "Classify a set of two-state kernels");
  stab->callback([&] {
    const auto set = load_kernel_set(stab_input);
    if (stab_two_point) {
      const auto cls = two_point_classify(set);
      nlohmann::json j{{"stable", cls.stable}};
      if (cls.witness) j["witness"] = {cls.witness->first, cls.witness->second};
      write_output(g, j.dump(2) + "\n");
      return;
    }
    const auto space = set.front().space();
    const auto pi = stab_pi.empty() ? ProbMeasure::uniform(space) : measure_from_json(read_text_file(stab_pi));
    EnvelopeOptions eo;
    eo.budget_nodes = g.budget_nodes;
    eo.threads = g.threads;
    if (stab_search) {
      SearchOptions so;
      so.seed = g.seed;
      so.envelope = eo;
      const auto res = search_stable_measure(set, pi, stab_depth, so);
      nlohmann::json j{{"c", res.c}, {"start", res.start}, {"evaluations", res.evaluations},
                       {"mu0", nlohmann::json::parse(to_json(res.mu0))}};
      write_output(g, j.dump(2) + "\n");
      return;
    }
    const auto mu0 = stab_mu0.empty() ? pi : measure_from_json(read_text_file(stab_mu0));
    auto rep = stab_samples > 0 ? sampled_ratio_envelope(set, mu0, pi, stab_depth, stab_samples, g.seed)
                                : ratio_envelope(set, mu0, pi, stab_depth, eo);
    if (stab_criterion > 0.0) {
      const auto crit = product_invariant_criterion(set, pi, stab_depth, stab_criterion, g.budget_nodes);
      rep.criterion_pass = crit.pass;
      if (!crit.pass) std::cerr << "criterion fails: " << crit.reason << '\n';
    }
    write_output(g, rep.json());
  });

  // spectral
  std::string spec_input;
  bool spec_weighted = false;
  double spec_compare = 0.0;
  std::int64_t spec_horizon = 0;
  auto* spectral_cmd = app.add_subcommand("spectral", "Spectra of graph walks and the weighted comparison check");
  spectral_cmd->add_option("graph", spec_input, "Graph JSON")->required()->check(CLI::ExistingFile);
  spectral_cmd->add_flag("--weighted", spec_weighted, "Use the edge weights instead of the simple random walk");
  spectral_cmd->add_option("--compare", spec_compare, "Run the comparison check with weight bound b");
  spectral_cmd->add_option("--horizon", spec_horizon, "Horizon for the comparison check (default 10|V|^2)");
  spectral_cmd->callback([&] {
    const auto graph = graph_from_json(read_text_file(spec_input));
    if (spec_compare > 0.0) {
      ComparisonOptions co;
      co.n_max = spec_horizon;
      const auto rep = comparison_check(graph, spec_compare, co);
      write_output(g, rep.csv());
      if (!rep.gap_holds || rep.violations > 0) {
        std::cerr << "comparison violated: gap_holds=" << rep.gap_holds << " violations=" << rep.violations << '\n';
        status = 1;
      }
      return;
    }
    write_output(g, (spec_weighted ? weighted_spectrum(graph) : srw_spectrum(graph)).json());
  });

  // run
  std::string run_target, run_format = "csv";
  bool run_list = false;
  auto* run = app.add_subcommand("run", "Run a scenario file or a built-in scenario");
  run->add_option("scenario", run_target, "Scenario JSON path or built-in name");
  run->add_flag("--list", run_list, "List built-in scenarios");
  run->add_option("--format", run_format, "csv, json or plotdata")->check(CLI::IsMember({"csv", "json", "plotdata"}));
  run->callback([&] {
    if (run_list) {
      std::ostringstream out;
      for (const auto& name : builtin_scenarios()) out << name << '\n';
      write_output(g, out.str());
      return;
    }
    if (run_target.empty()) throw InvalidArgument("run needs a scenario path or built-in name");
    RunOptions ro;
    ro.threads = g.threads;
    ro.budget_nodes = g.budget_nodes;
    if (app.count("--seed") > 0) ro.seed = g.seed;
    std::error_code ec;
    const Scenario s = parse_scenario(std::filesystem::is_regular_file(run_target, ec) ? read_text_file(run_target)
                                                                                        : builtin_scenario_text(run_target));
    const auto result = run_scenario(s, ro);
    for (const auto& [fmt, path] : s.outputs) emit(result, parse_emit_format(fmt), path);
    write_output(g, render(result, parse_emit_format(run_format)));
    for (const auto& [key, value] : result.summary) std::cerr << key << " = " << value << '\n';
    for (const auto& v : result.violations) std::cerr << "violation: " << v << '\n';
    if (!result.ok()) status = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const mclab::Error& e) {
    std::cerr << "mclab: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "mclab: " << e.what() << '\n';
    return 2;
  }
  return status;
}
